"""Pure-Python hot kernels.

Every kernel works on integer coordinate vectors in a fundamental-weight
basis, where the simple reflection ``s_i`` acts as
``v[j] -= v[i] * cartan[i][j]``.  Rational inputs are scaled to integers by
the caller; all kernels are linear so scaling commutes with them.

The compiled module ``_kernels`` exposes the same functions with the same
signatures and must return identical results.
"""

BACKEND = "python"


def dominant_word(v, cartan):
    """Return ``(dominant, word)`` for the integer pairing vector ``v``.

    Reflects at the lowest-index coordinate that is negative until none is.
    ``word`` lists the applied reflections in application order.
    """
    v = list(v)
    n = len(v)
    word = []
    i = 0
    while i < n:
        if v[i] < 0:
            c = v[i]
            row = cartan[i]
            for j in range(n):
                if row[j]:
                    v[j] -= c * row[j]
            word.append(i)
            i = 0
        else:
            i += 1
    return v, word


def dominant_batch(vs, cartan):
    """Dominant representatives for a sequence of integer vectors."""
    out = []
    for v in vs:
        out.append(dominant_word(v, cartan)[0])
    return out


def apply_word(v, word, cartan):
    """Apply the reflections of ``word`` to ``v`` in list order."""
    v = list(v)
    n = len(v)
    for i in word:
        c = v[i]
        if c:
            row = cartan[i]
            for j in range(n):
                if row[j]:
                    v[j] -= c * row[j]
    return v


def orbit_levels(start, cartan):
    """Sizes of the length levels of the orbit of a dominant regular vector.

    ``start`` must pair strictly positively with every simple root.  Level
    ``l`` holds the vectors ``w(start)`` with ``len(w) == l``; a reflection
    raises the length exactly when the reflected coordinate is positive, so
    each level is generated from the previous one and deduplicated on its own.
    """
    n = len(start)
    if any(x <= 0 for x in start):
        raise ValueError("orbit walk needs a strictly dominant start vector")
    rows = [[(j, cartan[i][j]) for j in range(n) if cartan[i][j]] for i in range(n)]
    level = {tuple(start)}
    sizes = []
    while level:
        sizes.append(len(level))
        nxt = set()
        for v in level:
            for i in range(n):
                c = v[i]
                if c > 0:
                    w = list(v)
                    for j, a in rows[i]:
                        w[j] -= c * a
                    nxt.add(tuple(w))
        level = nxt
    return sizes


def spin_values(mu, rho_n, cartan, gram2, shift):
    """Twice the squared norms ``|{mu - rho_n[j]} + shift|^2`` for every ``j``.

    ``gram2`` is twice the Gram matrix of the basis and must be integral.
    """
    n = len(mu)
    out = []
    for r in rho_n:
        d, _ = dominant_word([mu[k] - r[k] for k in range(n)], cartan)
        x = [d[k] + shift[k] for k in range(n)]
        s = 0
        for a in range(n):
            xa = x[a]
            if xa:
                row = gram2[a]
                t = 0
                for b in range(n):
                    t += row[b] * x[b]
                s += xa * t
        out.append(s)
    return out


def support_argmax(c, targets):
    """Index and value of ``max_j c . targets[j]`` (first index on ties)."""
    best = None
    arg = -1
    for j, t in enumerate(targets):
        s = 0
        for a in range(len(c)):
            s += c[a] * t[a]
        if best is None or s > best:
            best = s
            arg = j
    return arg, best


def orbit_select(start, cartan, test):
    """Orbit members ``v`` of a regular dominant ``start`` with ``test . v > 0``.

    ``test`` is a list of integer row vectors; a member is kept when every
    row pairs strictly positively with it.  Same level walk as
    ``orbit_levels``.
    """
    n = len(start)
    if any(x <= 0 for x in start):
        raise ValueError("orbit walk needs a strictly dominant start vector")
    rows = [[(j, cartan[i][j]) for j in range(n) if cartan[i][j]] for i in range(n)]
    level = {tuple(start)}
    kept = []
    while level:
        for v in sorted(level):
            if all(sum(t[k] * v[k] for k in range(n)) > 0 for t in test):
                kept.append(list(v))
        nxt = set()
        for v in level:
            for i in range(n):
                c = v[i]
                if c > 0:
                    w = list(v)
                    for j, a in rows[i]:
                        w[j] -= c * a
                    nxt.add(tuple(w))
        level = nxt
    return kept
