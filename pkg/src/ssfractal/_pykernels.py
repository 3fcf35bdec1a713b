"""NumPy implementations of the hot kernels.

Used when the compiled ``_ckernels`` extension is unavailable, or when
``SSFRACTAL_PURE_PYTHON=1`` is set. All kernels take weights already reduced
into ``[1, A-1]`` and return int64 arrays; callers are responsible for staying
inside the int64 range (see ``multiplicity`` and ``partition``).
"""

import numpy as np

# suffix block length for the ternary enumeration (3**10 = 59049 entries)
_TERNARY_BLOCK = 10


def _as_weights(weights):
    return np.ascontiguousarray(weights, dtype=np.int64)


def cyclic_subset_counts(weights, modulus):
    """Per-residue preimage counts via the cyclic update m'_c = m_c + m_{c-a}."""
    counts = np.zeros(modulus, dtype=np.int64)
    counts[0] = 1
    for a in _as_weights(weights):
        counts = counts + np.roll(counts, int(a))
    return counts


def signed_zero_coefficient(weights, modulus):
    """Coefficient at residue 0 of the product of kernels d_{-a} + 2 d_0 + d_{+a}."""
    poly = np.zeros(modulus, dtype=np.int64)
    poly[0] = 1
    for a in _as_weights(weights):
        a = int(a)
        poly = 2 * poly + np.roll(poly, a) + np.roll(poly, -a)
    return int(poly[0])


def subset_sums(weights, modulus):
    """Residue of every subset, indexed by bitmask (bit i <-> weight i)."""
    sums = np.zeros(1, dtype=np.int64)
    for a in _as_weights(weights):
        sums = np.concatenate([sums, (sums + int(a)) % modulus])
    return sums


def subset_sum_histogram(weights, modulus):
    return np.bincount(subset_sums(weights, modulus), minlength=modulus).astype(np.int64)


def weak_partition_vectors(weights, modulus):
    """All y in {-1,0,1}^s with leading nonzero +1 and sum(y*a) = 0 mod A.

    Rows are returned in lexicographic order (-1 < 0 < 1). A vector is
    canonical exactly when it is lexicographically greater than zero, so
    with ternary index sum((y_i+1) * 3^(s-1-i)) canonical rows are those with
    index above the all-zero index (3^s - 1) / 2.
    """
    w = _as_weights(weights)
    s = len(w)
    m = min(s, _TERNARY_BLOCK)
    head, tail = w[: s - m], w[s - m:]

    # every tail assignment in lex order, as (sum, ternary index)
    tail_sums = np.zeros(1, dtype=np.int64)
    for a in tail:
        tail_sums = (tail_sums[:, None] + np.array([-a, 0, a])[None, :]).ravel() % modulus
    tail_index = np.arange(3**m, dtype=np.int64)

    center = (3**s - 1) // 2
    found = []
    for prefix in range(3 ** (s - m)):
        digits = np.array(_ternary_digits(prefix, s - m), dtype=np.int64)
        psum = int(((digits - 1) * head).sum()) % modulus if len(head) else 0
        idx = tail_index[(tail_sums + psum) % modulus == 0] + prefix * 3**m
        found.append(idx[idx > center])
    indices = np.concatenate(found) if found else np.zeros(0, dtype=np.int64)
    return _decode_ternary(indices, s)


def _ternary_digits(value, length):
    digits = [0] * length
    for i in range(length - 1, -1, -1):
        value, digits[i] = divmod(value, 3)
    return digits


def _decode_ternary(indices, s):
    out = np.empty((len(indices), s), dtype=np.int8)
    rest = indices.copy()
    for i in range(s - 1, -1, -1):
        out[:, i] = rest % 3 - 1
        rest //= 3
    return out
