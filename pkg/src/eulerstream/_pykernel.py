"""Pure-Python main loop; drop-in fallback for the compiled ``_ckernel``.

Must stay line-for-line equivalent to ``_ckernel.pyx``.
"""

# status codes shared with _ckernel
ERR_SENTINEL = -1
ERR_START_EXHAUSTED = -2
ERR_COUNTER_OVERFLOW = -3

# register slots
C, U, V0, M, ITERS = range(5)


def advance(out_off, out_nbr, in_off, in_nbr, nxt, visited, skipped, back, regs, buf, limit):
    """Run the loop until ``limit`` edges are written or all ``m`` are out.

    Written edges go to ``buf`` as flat ``u, v`` pairs. Returns the number
    written in this call, or a negative status code; on error ``regs[C]``
    still counts every edge placed in ``buf`` before the failure.
    """
    c = regs[C]
    u = regs[U]
    v0 = regs[V0]
    m = regs[M]
    iters = regs[ITERS]
    written = 0
    status = 0
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
            # skip test only while i indexes a real out-edge
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
    regs[C] = c
    regs[U] = u
    regs[ITERS] = iters
    return status if status else written
