"""Compiled kernels for the hot loops.

Everything in here works on raw numpy arrays in uint64 and is wrapped by the
typed front ends in the sibling modules.  All kernels release the GIL so the
chunked search can overlap them across threads.
"""
from __future__ import annotations

import numpy as np
from numba import njit

UINT0 = np.uint64(0)
UINT1 = np.uint64(1)
UINT2 = np.uint64(2)
UINT4 = np.uint64(4)

STATUS_OK = 0
STATUS_TABLE_FULL = 1
STATUS_BUFFER_FULL = 2


@njit(cache=True, nogil=True)
def identity_fill(start, length):
    """Array [start, start+1, ..., start+length-1] as uint64."""
    vals = np.empty(length, np.uint64)
    n = start
    for k in range(length):
        vals[k] = n
        n += UINT1
    return vals


@njit(cache=True, nogil=True)
def strip_twos(vals, start):
    """Remove surplus factors of two from a fresh identity segment, in place.

    For every multiple of four the value is divided by 2**(v-1) where v is
    its 2-adic valuation (lowest set bit, shifted once).  Entries that are
    odd or exactly twice an odd number are already correct.
    """
    offset = int((UINT4 - start % UINT4) % UINT4)
    for idx in range(offset, vals.size, 4):
        v = vals[idx]
        low = v & (~v + UINT1)
        vals[idx] = v // (low >> UINT1)


@njit(cache=True, nogil=True)
def sieve_segment(start, length, primes, fast_two):
    """Radicals of [start, start+length-1] by dividing out repeated primes.

    Initializes each slot to its own integer, then for every prime power
    p**e (e >= 2) within range divides the slots on its arithmetic
    progression by p once.  `fast_two` replaces the whole p=2 pass with the
    lowest-set-bit shortcut of strip_twos.
    """
    vals = identity_fill(start, length)
    endpoint = start + np.uint64(length - 1)
    length_u = np.uint64(length)
    if fast_two:
        strip_twos(vals, start)
    for j in range(primes.size):
        p = primes[j]
        if p > endpoint // p:
            break  # p*p exceeds the endpoint; primes ascend, so all later ones do too
        if fast_two and p == UINT2:
            continue
        power = p * p
        while True:
            residue = start % power
            if residue == UINT0:
                residue = power
            shift = power - residue
            # start + shift is the first integer in range divisible by power
            if shift > length_u:
                break  # no multiple of this power (nor any higher one) in range
            idx = shift
            while idx < length_u:
                vals[idx] //= p
                idx += power
            if power > endpoint // p:
                break  # next power would pass the endpoint (or wrap 64 bits)
            power *= p
    return vals


@njit(cache=True, nogil=True)
def radicals_trial_division(start, length):
    """Radicals of [start, start+length-1] by per-integer trial division.

    Deliberately shares nothing with sieve_segment; used as the reference
    the sieve is checked against.
    """
    out = np.empty(length, np.uint64)
    for k in range(length):
        n = start + np.uint64(k)
        r = UINT1
        if n & UINT1 == UINT0:
            r = UINT2
            while n & UINT1 == UINT0:
                n >>= UINT1
        d = np.uint64(3)
        while d * d <= n:
            if n % d == UINT0:
                r *= d
                while n % d == UINT0:
                    n //= d
            d += UINT2
        if n > UINT1:
            r *= n
        out[k] = r
    return out


@njit(cache=True, nogil=True, inline="always")
def _slot_of(lo, hi, mask, phi, mul1, mul2):
    # Two multiply-xor-shift avalanche rounds over the canonical pair,
    # masked to the power-of-two table size.
    x = lo ^ (hi * phi)
    x = (x ^ (x >> np.uint64(30))) * mul1
    x = (x ^ (x >> np.uint64(27))) * mul2
    x = x ^ (x >> np.uint64(31))
    return x & mask


UINT32_SHIFT = np.uint64(32)
UINT32_MASK = np.uint64(0xFFFFFFFF)


@njit(cache=True, nogil=True)
def build_table(domain_start, rad_of, rad_next, n_limit,
                slots, mask, phi, mul1, mul2,
                out_kind, out_m, out_n, out_rm, out_rm1):
    """Insert every domain element into the table, reporting matches found.

    Element t stands for the integer n = domain_start + t with signature
    {rad_of[t], rad_next[t]}.  A slot packs (t+1) in its high 32 bits and
    the home slot in the low 32, zero meaning empty, so one load answers
    both the occupancy and the same-home prefilter.  Linear probing; every
    occupied slot passed whose signature equals the new one yields a pair
    (stored, n).  Insertion stops at the first n >= n_limit.
    """
    found = 0
    inserted = 0
    cap = out_m.size
    n = domain_start
    for t in range(rad_of.size):
        if n >= n_limit:
            break
        a = rad_of[t]
        b = rad_next[t]
        if a < b:
            lo, hi = a, b
        else:
            lo, hi = b, a
        home = _slot_of(lo, hi, mask, phi, mul1, mul2)
        idx = home
        steps = UINT0
        while True:
            stored = slots[idx]
            if stored == UINT0:
                slots[idx] = (np.uint64(t + 1) << UINT32_SHIFT) | home
                inserted += 1
                break
            if stored & UINT32_MASK == home:
                tp = np.int64(stored >> UINT32_SHIFT) - 1
                a2 = rad_of[tp]
                b2 = rad_next[tp]
                if min(a2, b2) == lo and max(a2, b2) == hi:
                    if found >= cap:
                        return found, inserted, STATUS_BUFFER_FULL
                    out_kind[found] = 1 if a2 == a else 2
                    out_m[found] = domain_start + np.uint64(tp)
                    out_n[found] = n
                    out_rm[found] = a2
                    out_rm1[found] = b2
                    found += 1
            idx = (idx + UINT1) & mask
            steps += UINT1
            if steps > mask:
                return found, inserted, STATUS_TABLE_FULL
        n += UINT1
    return found, inserted, STATUS_OK


@njit(cache=True, nogil=True)
def probe_table(probe_start, rad_of, rad_next,
                domain_start, cur_rad_of, cur_rad_next,
                slots, mask, phi, mul1, mul2,
                out_kind, out_m, out_n, out_rm, out_rm1):
    """Probe the table with every element of an earlier domain; read only.

    For element t (integer m = probe_start + t) the probe walks from the
    signature's home slot to the first empty slot and reports every stored
    n with an equal signature.
    """
    found = 0
    cap = out_m.size
    m = probe_start
    for t in range(rad_of.size):
        a = rad_of[t]
        b = rad_next[t]
        if a < b:
            lo, hi = a, b
        else:
            lo, hi = b, a
        home = _slot_of(lo, hi, mask, phi, mul1, mul2)
        idx = home
        steps = UINT0
        while True:
            stored = slots[idx]
            if stored == UINT0:
                break
            if stored & UINT32_MASK == home:
                tp = np.int64(stored >> UINT32_SHIFT) - 1
                a2 = cur_rad_of[tp]
                b2 = cur_rad_next[tp]
                if min(a2, b2) == lo and max(a2, b2) == hi:
                    if found >= cap:
                        return found, STATUS_BUFFER_FULL
                    out_kind[found] = 1 if a == a2 else 2
                    out_m[found] = m
                    out_n[found] = domain_start + np.uint64(tp)
                    out_rm[found] = a
                    out_rm1[found] = b
                    found += 1
            idx = (idx + UINT1) & mask
            steps += UINT1
            if steps > mask:
                return found, STATUS_TABLE_FULL
        m += UINT1
    return found, STATUS_OK


@njit(cache=True, nogil=True)
def brute_force_scan(rads, out_kind, out_m, out_n):
    """All pairs m < n < limit by the quadratic double loop.

    rads[t] = rad(t+1) must cover 1..limit so rad(n+1) exists for the
    largest n.  No sorting, no hashing; this is the ground-truth scan.
    """
    limit = rads.size
    found = 0
    cap = out_m.size
    for m in range(1, limit - 1):
        rm = rads[m - 1]
        rm1 = rads[m]
        for n in range(m + 1, limit):
            rn = rads[n - 1]
            rn1 = rads[n]
            if rn == rm and rn1 == rm1:
                kind = 1
            elif rn == rm1 and rn1 == rm:
                kind = 2
            else:
                continue
            if found >= cap:
                return found, STATUS_BUFFER_FULL
            out_kind[found] = kind
            out_m[found] = m
            out_n[found] = n
            found += 1
    return found, STATUS_OK
