"""Exact Gaussian elimination over Z/p with plain ints."""


def affine_solutions_mod_p(rows, rhs, p):
    """Solve ``rows @ y = rhs`` modulo ``p``.

    Returns ``None`` when inconsistent, else ``(particular, kernel_basis)``.
    """
    m = len(rows)
    ncols = len(rows[0]) if rows else 0
    aug = [[v % p for v in r] + [b % p] for r, b in zip(rows, rhs)]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, m) if aug[i][col]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = pow(aug[r][col], -1, p)
        row_r = [v * inv % p for v in aug[r]]
        aug[r] = row_r
        for i in range(m):
            f = aug[i][col]
            if i != r and f:
                aug[i] = [(a - f * b) % p for a, b in zip(aug[i], row_r)]
        pivots.append(col)
        r += 1
        if r == m:
            break
    if any(aug[i][ncols] for i in range(r, m)):
        return None
    particular = [0] * ncols
    for i, col in enumerate(pivots):
        particular[col] = aug[i][ncols]
    kernel = []
    for free in (c for c in range(ncols) if c not in pivots):
        vec = [0] * ncols
        vec[free] = 1
        for i, col in enumerate(pivots):
            vec[col] = -aug[i][free] % p
        kernel.append(vec)
    return particular, kernel
