"""Pure-Python kernels, used when the compiled ``_kernels`` extension is absent.

Every function here has a twin with the same signature in ``_kernels.pyx``;
the test-suite runs both against each other.
"""
import math

import numpy as np


def _digit(v, j, p, m):
    return (v // p ** (m - 1 - j)) % p


def field_mul_table(p, m, poly):
    """Multiplication table of GF(p**m) over integer-encoded elements.

    Element value ``v`` encodes the digit vector of ``v`` in base ``p``, most
    significant digit first; digit ``j`` is the coefficient of ``x**(m-1-j)``.
    ``poly`` holds the ``m + 1`` coefficients of the monic modulus, leading
    coefficient first.
    """
    n = p ** m
    digits = [[_digit(v, j, p, m) for j in range(m)] for v in range(n)]
    table = np.zeros((n, n), dtype=np.int64)
    for a in range(n):
        da = digits[a]
        for b in range(a, n):
            db = digits[b]
            prod = [0] * (2 * m - 1)
            for i in range(m):
                if da[i]:
                    for j in range(m):
                        prod[i + j] = (prod[i + j] + da[i] * db[j]) % p
            for i in range(m - 1):
                f = prod[i]
                if f:
                    for j in range(m + 1):
                        prod[i + j] = (prod[i + j] - f * poly[j]) % p
            v = 0
            for i in range(m - 1, 2 * m - 1):
                v = v * p + prod[i]
            table[a, b] = v
            table[b, a] = v
    return table


def quadratic_exponents(alpha, p, modulus):
    """``Q[k, u] = u^T (sum_j k_j alpha_j) u  (mod modulus)`` for all k, u.

    The matrix ``sum_j k_j alpha_j`` is formed over the integers, so the
    result is meaningful modulo 4 when ``p == 2``.
    """
    m = alpha.shape[0]
    n = p ** m
    digits = [[_digit(v, j, p, m) for j in range(m)] for v in range(n)]
    # forms[j][u] = u^T alpha_j u over the integers
    forms = [[0] * n for _ in range(m)]
    for j in range(m):
        a = alpha[j]
        for u in range(n):
            du = digits[u]
            s = 0
            for r in range(m):
                if du[r]:
                    for c in range(m):
                        s += du[r] * int(a[r, c]) * du[c]
            forms[j][u] = s
    out = np.zeros((n, n), dtype=np.int64)
    for k in range(n):
        dk = digits[k]
        for u in range(n):
            s = 0
            for j in range(m):
                s += dk[j] * forms[j][u]
            out[k, u] = s % modulus
    return out


def _off_norm(a, n):
    s = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                z = a[i][j]
                s += z.real * z.real + z.imag * z.imag
    return math.sqrt(s)


def jacobi_hermitian(a, want_vectors, tol, max_sweeps):
    """Cyclic Jacobi diagonalisation of a Hermitian matrix.

    Returns ``(diag, vectors, off_norm, sweeps)``; ``diag`` is unsorted and
    ``vectors`` is ``None`` unless requested.  Convergence is declared when
    the off-diagonal Frobenius norm drops to ``tol`` times ``max(1, ||a||_F)``.
    The caller decides what to do when ``off_norm`` is still above threshold.
    """
    n = a.shape[0]
    w = [[complex(a[i, j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        w[i][i] = complex(w[i][i].real, 0.0)
    v = [[1.0 + 0j if i == j else 0j for j in range(n)] for i in range(n)] if want_vectors else None
    scale = max(1.0, math.sqrt(sum(abs(z) ** 2 for row in w for z in row)))
    threshold = tol * scale
    sweeps = 0
    off = _off_norm(w, n)
    while off > threshold and sweeps < max_sweeps:
        sweeps += 1
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = w[p][q]
                g = abs(apq)
                if g < 1e-300:
                    continue
                e = apq / g
                theta = (w[q][q].real - w[p][p].real) / (2.0 * g)
                t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
                if theta < 0.0:
                    t = -t
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                ec = e.conjugate()
                # columns: A <- A J
                for r in range(n):
                    arp = w[r][p]
                    arq = w[r][q]
                    w[r][p] = c * arp - s * ec * arq
                    w[r][q] = s * arp + c * ec * arq
                # rows: A <- J^H A
                for r in range(n):
                    apr = w[p][r]
                    aqr = w[q][r]
                    w[p][r] = c * apr - s * e * aqr
                    w[q][r] = s * apr + c * e * aqr
                w[p][q] = 0j
                w[q][p] = 0j
                w[p][p] = complex(w[p][p].real, 0.0)
                w[q][q] = complex(w[q][q].real, 0.0)
                if v is not None:
                    for r in range(n):
                        vrp = v[r][p]
                        vrq = v[r][q]
                        v[r][p] = c * vrp - s * ec * vrq
                        v[r][q] = s * vrp + c * ec * vrq
        off = _off_norm(w, n)
    diag = np.array([w[i][i].real for i in range(n)])
    vectors = np.array(v, dtype=np.complex128) if v is not None else None
    return diag, vectors, off, sweeps
