"""NumPy implementations of the hot kernels.

Same contracts as the compiled ``_core`` extension: batched quartic roots via
companion-matrix eigenvalues plus two Newton polish steps, and kernel density
evaluation. Selected automatically when the extension is unavailable or when
``RMTSPEC_PURE_PYTHON=1``.
"""

import numpy as np

BACKEND = "pure"

_SQRT_2PI = np.sqrt(2.0 * np.pi)


def quartic_roots_batch(coeffs: np.ndarray) -> np.ndarray:
    """Roots of a batch of quartics, descending-degree coefficients.

    Parameters
    ----------
    coeffs : (m, 5) complex array; ``coeffs[i, 0]`` must be nonzero.

    Returns
    -------
    (m, 4) complex array of roots, each row sorted by (real, imag).
    """
    c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    if c.ndim != 2 or c.shape[1] != 5:
        raise ValueError("coeffs must have shape (m, 5)")
    m = c.shape[0]
    a = c[:, 1:] / c[:, :1]  # monic: x^4 + a0 x^3 + a1 x^2 + a2 x + a3

    comp = np.zeros((m, 4, 4), dtype=np.complex128)
    comp[:, 0, :] = -a
    comp[:, 1, 0] = 1.0
    comp[:, 2, 1] = 1.0
    comp[:, 3, 2] = 1.0
    roots = np.linalg.eigvals(comp)

    for _ in range(2):
        p = ((roots + a[:, :1]) * roots + a[:, 1:2]) * roots * roots \
            + a[:, 2:3] * roots + a[:, 3:4]
        dp = ((4.0 * roots + 3.0 * a[:, :1]) * roots + 2.0 * a[:, 1:2]) * roots \
            + a[:, 2:3]
        step = np.where(dp != 0.0, p / np.where(dp != 0.0, dp, 1.0), 0.0)
        cand = roots - step
        p_new = ((cand + a[:, :1]) * cand + a[:, 1:2]) * cand * cand \
            + a[:, 2:3] * cand + a[:, 3:4]
        roots = np.where(np.abs(p_new) < np.abs(p), cand, roots)

    order = np.lexsort((roots.imag, roots.real), axis=1)
    return np.take_along_axis(roots, order, axis=1)


def kde_eval(samples: np.ndarray, grid: np.ndarray, h: float, kernel: int) -> np.ndarray:
    """Kernel density estimate of `samples` on `grid` with bandwidth `h`.

    kernel: 0 = gaussian, 1 = epanechnikov.
    """
    s = np.asarray(samples, dtype=np.float64).ravel()
    x = np.asarray(grid, dtype=np.float64).ravel()
    out = np.zeros(len(x), dtype=np.float64)
    if len(s) == 0:
        return out
    # chunk the grid to bound the (chunk x samples) temporary
    chunk = max(1, int(4_000_000 // max(len(s), 1)))
    for lo in range(0, len(x), chunk):
        u = (x[lo:lo + chunk, None] - s[None, :]) / h
        if kernel == 0:
            k = np.exp(-0.5 * u * u) / _SQRT_2PI
        else:
            k = 0.75 * np.clip(1.0 - u * u, 0.0, None)
        out[lo:lo + chunk] = k.sum(axis=1)
    out /= len(s) * h
    return out
