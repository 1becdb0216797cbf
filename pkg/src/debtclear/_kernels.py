"""Compiled inner loops for the GA operators.

Kernels never draw random numbers; callers pass pre-drawn uniforms in [0, 1)
so the seeded generator in :mod:`debtclear.evolve` stays the only source of
randomness.
"""
import numpy as np
from numba import njit

RECOMB1 = 0
RECOMB2 = 1
MUT1 = 0
MUT2 = 1
MUT3 = 2


@njit(cache=True)
def count_zero_prefixes(darr, genes):
    s = 0
    count = 0
    for g in genes:
        s += darr[g]
        if s == 0:
            count += 1
    return count


@njit(cache=True)
def population_fitness(darr, pop):
    out = np.empty(pop.shape[0], dtype=np.int64)
    for r in range(pop.shape[0]):
        out[r] = count_zero_prefixes(darr, pop[r])
    return out


@njit(cache=True)
def block_bounds(darr, genes):
    """Start offset of each block, followed by n."""
    n = genes.shape[0]
    tmp = np.empty(n + 1, dtype=np.int64)
    tmp[0] = 0
    m = 1
    s = 0
    for p in range(n):
        s += darr[genes[p]]
        if s == 0:
            tmp[m] = p + 1
            m += 1
    if tmp[m - 1] != n:  # only for vectors that do not sum to zero
        tmp[m] = n
        m += 1
    return tmp[:m].copy()


@njit(cache=True)
def _index_blocks(darr, genes, entity_block, bounds):
    s = 0
    b = 0
    bounds[0] = 0
    for p in range(genes.shape[0]):
        entity_block[genes[p]] = b
        s += darr[genes[p]]
        if s == 0:
            b += 1
            bounds[b] = p + 1
    return b


@njit(cache=True)
def refine(darr, donor, child):
    """Rewrite each child block that strictly contains a donor block as donor block + remainder."""
    n = child.shape[0]
    out = child.copy()
    entity_block = np.empty(n, dtype=np.int64)
    c_bounds = np.empty(n + 1, dtype=np.int64)
    _index_blocks(darr, out, entity_block, c_bounds)
    d_bounds = block_bounds(darr, donor)
    inside = np.zeros(n, dtype=np.bool_)
    seg = np.empty(n, dtype=out.dtype)
    for b in range(d_bounds.shape[0] - 1):
        lo, hi = d_bounds[b], d_bounds[b + 1]
        q = entity_block[donor[lo]]
        contained = True
        for p in range(lo + 1, hi):
            if entity_block[donor[p]] != q:
                contained = False
                break
        if not contained:
            continue
        qs, qe = c_bounds[q], c_bounds[q + 1]
        if hi - lo >= qe - qs:
            continue
        for p in range(lo, hi):
            inside[donor[p]] = True
        w = 0
        for p in range(lo, hi):
            seg[w] = donor[p]
            w += 1
        for p in range(qs, qe):
            if not inside[out[p]]:
                seg[w] = out[p]
                w += 1
        for p in range(lo, hi):
            inside[donor[p]] = False
        for t in range(w):
            out[qs + t] = seg[t]
        _index_blocks(darr, out, entity_block, c_bounds)
    return out


@njit(cache=True)
def prefix_then_rest(parent, other, k):
    n = parent.shape[0]
    used = np.zeros(n, dtype=np.bool_)
    out = np.empty(n, dtype=parent.dtype)
    for p in range(k):
        out[p] = parent[p]
        used[parent[p]] = True
    w = k
    for p in range(n):
        if not used[other[p]]:
            out[w] = other[p]
            w += 1
    return out


@njit(cache=True)
def reverse_range(genes, i, j):
    while i < j:
        genes[i], genes[j] = genes[j], genes[i]
        i += 1
        j -= 1


@njit(cache=True)
def reverse_blocks(darr, genes, i, j):
    bounds = block_bounds(darr, genes)
    out = genes.copy()
    w = bounds[i]
    for b in range(j, i - 1, -1):
        for p in range(bounds[b], bounds[b + 1]):
            out[w] = genes[p]
            w += 1
    return out


@njit(cache=True)
def _pick_pair(m, u1, u2):
    i = int(u1 * m)
    j = int(u2 * (m - 1))
    if j >= i:
        j += 1
    if i > j:
        i, j = j, i
    return i, j


@njit(cache=True)
def random_mutation(darr, genes, kind, u0, u1, u2):
    """Apply one mutation with parameters mapped from uniforms; returns a new array."""
    out = genes.copy()
    n = genes.shape[0]
    if kind == MUT1:
        if n >= 2:
            i, j = _pick_pair(n, u1, u2)
            reverse_range(out, i, j)
        return out
    bounds = block_bounds(darr, genes)
    nblocks = bounds.shape[0] - 1
    if kind == MUT2:
        if nblocks < 2:
            return out
        i, j = _pick_pair(nblocks, u1, u2)
        return reverse_blocks(darr, genes, i, j)
    eligible = 0
    for b in range(nblocks):
        if bounds[b + 1] - bounds[b] >= 2:
            eligible += 1
    if eligible == 0:
        return out
    pick = int(u0 * eligible)
    for b in range(nblocks):
        if bounds[b + 1] - bounds[b] >= 2:
            if pick == 0:
                i, j = _pick_pair(bounds[b + 1] - bounds[b], u1, u2)
                reverse_range(out, bounds[b] + i, bounds[b] + j)
                return out
            pick -= 1
    return out


@njit(cache=True)
def breed(darr, pop, parents, elite_rows, recomb_kind, mut_kind, mutate_parent,
          mutate_flags, uniforms, cuts):
    """Build the next population: elites first, then two offspring per parent pair.

    With ``mutate_parent`` false, each pair is recombined and each child is
    mutated when its flag is set. With it true, each parent is mutated first
    (same flags) and recombined with the other, unmutated, parent.
    """
    size, n = pop.shape
    nxt = np.empty_like(pop)
    filled = 0
    for e in elite_rows:
        nxt[filled] = pop[e]
        filled += 1
    slot = 0
    for pair in range(parents.shape[0]):
        a = pop[parents[pair, 0]]
        b = pop[parents[pair, 1]]
        k = 1 + int(cuts[pair] * n)
        if mutate_parent:
            a2 = a
            b2 = b
            if mutate_flags[slot]:
                a2 = random_mutation(darr, a, mut_kind, uniforms[slot, 0], uniforms[slot, 1], uniforms[slot, 2])
            if slot + 1 < mutate_flags.shape[0] and mutate_flags[slot + 1]:
                b2 = random_mutation(darr, b, mut_kind,
                                     uniforms[slot + 1, 0], uniforms[slot + 1, 1], uniforms[slot + 1, 2])
            if recomb_kind == RECOMB1:
                c1 = prefix_then_rest(a2, b, k)
                c2 = prefix_then_rest(b2, a, k)
            else:
                c1 = refine(darr, b, a2)
                c2 = refine(darr, a, b2)
        elif recomb_kind == RECOMB1:
            c1 = prefix_then_rest(a, b, k)
            c2 = prefix_then_rest(b, a, k)
        else:
            c1 = refine(darr, b, a)
            c2 = refine(darr, a, b)
        for child in (c1, c2):
            if filled == size:
                break
            if not mutate_parent and mutate_flags[slot]:
                child = random_mutation(darr, child, mut_kind,
                                        uniforms[slot, 0], uniforms[slot, 1], uniforms[slot, 2])
            nxt[filled] = child
            filled += 1
            slot += 1
    return nxt
