"""Pure-Python permutation kernels (fallback for the compiled ``_perm``).

Permutations are tuples in one-line notation; ``compose(a, b)[i] == a[b[i]]``.
"""


def compose(a, b):
    return tuple(map(a.__getitem__, b))


def inverse(a):
    out = [0] * len(a)
    for i, ai in enumerate(a):
        out[ai] = i
    return tuple(out)


def word_product(gens, word, n):
    """Product ``gens[w0] gens[w1] ...`` of a word, as a permutation of ``range(n)``."""
    acc = tuple(range(n))
    for w in word:
        acc = tuple(map(acc.__getitem__, gens[w]))
    return acc


def group_order(gens, cap):
    """Size of the group generated by ``gens``; -1 if it exceeds ``cap``."""
    n = len(gens[0])
    start = tuple(range(n))
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for e in frontier:
            get = e.__getitem__
            for g in gens:
                h = tuple(map(get, g))
                if h not in seen:
                    seen.add(h)
                    if len(seen) > cap:
                        return -1
                    nxt.append(h)
        frontier = nxt
    return len(seen)


def longest_descent(gens, simple_index, positive, allowed):
    """Longest element of the subgroup generated by ``gens[i]`` for ``i`` in ``allowed``.

    Right-multiplies by a simple reflection whose root is still sent to a
    positive root until none is left.  Returns ``(perm, word)``.
    """
    n = len(positive)
    w = tuple(range(n))
    word = []
    progress = True
    while progress:
        progress = False
        for i in allowed:
            if positive[w[simple_index[i]]]:
                w = tuple(map(w.__getitem__, gens[i]))
                word.append(i)
                progress = True
                break
    return w, word
