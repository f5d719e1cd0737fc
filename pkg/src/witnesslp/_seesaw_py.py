"""Pure-NumPy seesaw kernel, the fallback when the compiled extension is absent.

Given a bipartite operator reshaped to (n, n, n, n), each restart alternately
maximizes <a b|W|a b> over one local vector at a time: with one side fixed the
functional is a Hermitian quadratic form on the other side, so the exact step
is the top eigenvector of the effective n x n operator.  All restarts advance
in lockstep through batched einsum/eigh calls.
"""

import numpy as np


def run(w4, starts, max_iter, tol):
    """Alternating ascent from each start vector.

    Parameters
    ----------
    w4 : complex (n, n, n, n) array, W[(i,j),(k,l)] reshaped row-major.
    starts : complex (R, n) array of initial A-side vectors.
    max_iter : iteration cap per restart.
    tol : stop when the value changes by less than this between sweeps.

    Returns
    -------
    values (R,), a_vecs (R, n), b_vecs (R, n), iterations (R,), converged (R,)
    """
    starts = np.asarray(starts, dtype=complex)
    r, n = starts.shape
    a = starts / np.linalg.norm(starts, axis=1, keepdims=True)
    b = np.zeros_like(a)
    vals = np.full(r, -np.inf)
    iters = np.zeros(r, dtype=np.int64)
    conv = np.zeros(r, dtype=bool)
    active = np.arange(r)
    for step in range(1, max_iter + 1):
        aa = a[active]
        m = np.einsum("ri,ijkl,rk->rjl", aa.conj(), w4, aa, optimize=True)
        _, vec = np.linalg.eigh(m)
        bb = vec[..., -1]
        nn = np.einsum("rj,ijkl,rl->rik", bb.conj(), w4, bb, optimize=True)
        ew, vec = np.linalg.eigh(nn)
        new_vals = ew[..., -1]
        done = np.abs(new_vals - vals[active]) < tol
        a[active] = vec[..., -1]
        b[active] = bb
        vals[active] = new_vals
        iters[active] = step
        if done.any():
            conv[active[done]] = True
            active = active[~done]
            if active.size == 0:
                break
    return vals, a, b, iters, conv
