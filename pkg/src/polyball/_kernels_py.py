"""Pure NumPy implementation of the hot quadrature kernel.

Reference semantics for the compiled extension: one call evaluates, for a
fixed complex point z and complex node factor c,

    sum_i wf[i] / (sum_j (z[j] - c * nodes[i, j])**2) ** (npow / 2)

with the principal branch for odd npow and the exact integer power for even
npow.  Signed zeros in the imaginary part of the bilinear square are
normalized upward before taking the logarithm.
"""

import numpy as np


def weighted_kernel_sum(z, nodes, node_factor, wf, npow):
    z = np.asarray(z, dtype=np.complex128)
    nodes = np.asarray(nodes, dtype=np.float64)
    wf = np.asarray(wf, dtype=np.complex128)
    npow = int(npow)
    diff = z[np.newaxis, :] - node_factor * nodes
    w = np.einsum("ij,ij->i", diff, diff)
    w = np.where(w.imag == 0.0, w.real + 0j, w)
    if npow % 2 == 0:
        den = w ** (npow // 2)
    else:
        den = np.exp((0.5 * npow) * np.log(w))
    return complex(np.sum(wf / den))
