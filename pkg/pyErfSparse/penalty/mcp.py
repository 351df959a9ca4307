# ------------------------------------------
# Minimax concave penalty (MCP)
# ------------------------------------------

import numpy as np


def mcp_phi(x, lam, gamma):
    """MCP penalty, entrywise: lam|x| - x^2/(2 gamma) up to gamma lam, then gamma lam^2 / 2."""
    if not lam > 0:
        raise ValueError("MCP lambda must be > 0")
    if not gamma > 0:
        raise ValueError("MCP gamma must be > 0")

    ax = np.abs(np.asarray(x, dtype=float))
    return np.where(ax <= gamma * lam, lam * ax - ax ** 2 / (2.0 * gamma), 0.5 * gamma * lam ** 2)


def mcp_value(x, lam, gamma):
    return float(np.sum(mcp_phi(x, lam, gamma)))
