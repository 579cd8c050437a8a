"""Compiled inner loop for Weyl group enumeration."""
import numpy as np
from numba import njit


@njit(cache=True)
def _trace_keys(prefix, tail, tail_dets, npow, out):
    r = prefix.shape[0]
    base = 2 * r + 1
    w = np.empty((r, r), dtype=np.int32)
    w2 = np.empty((r, r), dtype=np.int32)
    w3 = np.empty((r, r), dtype=np.int32)
    w4 = np.empty((r, r), dtype=np.int32)
    tr = np.zeros(9, dtype=np.int64)
    for n in range(tail.shape[0]):
        e = tail[n]
        for i in range(r):
            for j in range(r):
                acc = 0
                for k in range(r):
                    acc += prefix[i, k] * e[k, j]
                w[i, j] = acc
        for i in range(r):
            for j in range(r):
                acc = 0
                for k in range(r):
                    acc += w[i, k] * w[k, j]
                w2[i, j] = acc
        t1 = 0
        t2 = 0
        t3 = 0
        t4 = 0
        for i in range(r):
            t1 += w[i, i]
            t2 += w2[i, i]
            for k in range(r):
                t3 += w2[i, k] * w[k, i]
                t4 += w2[i, k] * w2[k, i]
        tr[1] = t1
        tr[2] = t2
        tr[3] = t3
        tr[4] = t4
        if npow > 4:
            for i in range(r):
                for j in range(r):
                    acc = 0
                    for k in range(r):
                        acc += w2[i, k] * w[k, j]
                    w3[i, j] = acc
            for i in range(r):
                for j in range(r):
                    acc = 0
                    for k in range(r):
                        acc += w2[i, k] * w2[k, j]
                    w4[i, j] = acc
            t5 = 0
            t6 = 0
            t7 = 0
            t8 = 0
            for i in range(r):
                for k in range(r):
                    t5 += w3[i, k] * w2[k, i]
                    t6 += w3[i, k] * w3[k, i]
                    t7 += w4[i, k] * w3[k, i]
                    t8 += w4[i, k] * w4[k, i]
            tr[5] = t5
            tr[6] = t6
            tr[7] = t7
            tr[8] = t8
        key = 0
        for k in range(npow, 0, -1):
            key = key * base + (tr[k] + r)
        out[n] = 2 * key + (1 if tail_dets[n] > 0 else 0)


def trace_keys(prefix, tail, tail_dets, npow):
    """Encode (tr w, tr w^2, ..., tr w^npow, det w) for w = prefix @ tail[n]."""
    if npow > 8:
        raise ValueError("at most 8 power traces supported")
    out = np.empty(tail.shape[0], dtype=np.int64)
    _trace_keys(np.ascontiguousarray(prefix, dtype=np.int32),
                np.ascontiguousarray(tail, dtype=np.int32),
                np.ascontiguousarray(tail_dets, dtype=np.int64), npow, out)
    return out
