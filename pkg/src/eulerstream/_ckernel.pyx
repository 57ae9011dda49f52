# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled main loop. Mirrors ``_pykernel.advance`` exactly."""

ctypedef long long idx_t

cdef enum:
    ERR_SENTINEL = -1
    ERR_START_EXHAUSTED = -2
    ERR_COUNTER_OVERFLOW = -3


def advance(const idx_t[:] out_off, const idx_t[:] out_nbr,
            const idx_t[:] in_off, const idx_t[:] in_nbr,
            idx_t[:] nxt, unsigned char[:] visited, unsigned char[:] skipped,
            idx_t[:] back, idx_t[:] regs, idx_t[:] buf, idx_t limit):
    cdef idx_t c = regs[0]
    cdef idx_t u = regs[1]
    cdef idx_t v0 = regs[2]
    cdef idx_t m = regs[3]
    cdef idx_t iters = regs[4]
    cdef idx_t written = 0
    cdef idx_t status = 0
    cdef idx_t i, v, b, base, din, dout
    with nogil:
        while c < m and written < limit:
            iters += 1
            i = nxt[u] + 1
            nxt[u] = i
            base = in_off[u]
            din = in_off[u + 1] - base
            if i <= din:
                v = in_nbr[base + i - 1]
                if not visited[v]:
                    if v != v0:
                        back[v] = u
                    visited[v] = 1
                u = v
            else:
                i -= din
                base = out_off[u]
                dout = out_off[u + 1] - base
                b = back[u]
                if i <= dout and out_nbr[base + i - 1] == b and not skipped[u]:
                    skipped[u] = 1
                    nxt[u] += 1
                    i += 1
                if nxt[u] > din + dout + 1:
                    status = ERR_COUNTER_OVERFLOW
                    break
                if i > dout:
                    if b == 0:
                        status = ERR_START_EXHAUSTED if u == v0 else ERR_SENTINEL
                        break
                    v = b
                else:
                    v = out_nbr[base + i - 1]
                buf[2 * written] = u
                buf[2 * written + 1] = v
                written += 1
                c += 1
                u = v
    regs[0] = c
    regs[1] = u
    regs[4] = iters
    return status if status else written
