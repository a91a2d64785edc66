"""Pure-Python lattice-sum kernel; reference semantics for the compiled core."""


def lattice_sum(lo, hi, modulus, alternate, skip_p, table, g0, g, brackets):
    """Sum over lo <= a < hi of sign(a) * T[a] * G(a) * prod_b (B_b(a) w_b(a))^e_b.

    ``T`` is ``table`` indexed by ``a % len(table)``; ``G(a) = g0 * g^(a - lo)``.
    Each bracket is ``(b0, s0, r, e, wtab)``: ``B(lo) = b0`` and
    ``B(a + 1) = B(a) + s(a)`` with ``s(lo) = s0``, ``s(a + 1) = s(a) * r``;
    ``wtab`` (or None) is indexed by ``a % len(wtab)``.  Points with
    ``a % skip_p == 0`` are dropped when ``skip_p`` is nonzero.  The sign is
    ``(-1)^a`` when ``alternate`` is set.
    """
    m = modulus
    n_tab = len(table)
    states = [[b0 % m, s0 % m, r % m, e, w] for b0, s0, r, e, w in brackets]
    gval = g0 % m
    acc = 0
    for a in range(lo, hi):
        val = table[a % n_tab]
        if val and not (skip_p and a % skip_p == 0):
            val = val * gval % m
            for b, _, _, e, w in states:
                x = b if w is None else b * w[a % len(w)] % m
                val = val * pow(x, e, m) % m
            if alternate and a & 1:
                acc -= val
            else:
                acc += val
        gval = gval * g % m
        for st in states:
            st[0] = (st[0] + st[1]) % m
            st[1] = st[1] * st[2] % m
    return acc % m
