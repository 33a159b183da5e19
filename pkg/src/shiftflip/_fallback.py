"""Pure-Python versions of the compiled kernels in ``_ckernels.pyx``.

Same arguments, same results.  Keys are Python integers, so there is no
size limit on windows; this path is used whenever the compiled module is
missing or a window key would overflow 63 bits.
"""


def fixed_point_dfs(q, n, order, cstart, ctarget, cpoff, clen, cpos,
                    adm_keys, rule_keys, rule_out, collect):
    """Count (and optionally list) words ``x`` of length ``n`` over ``range(q)``.

    Positions are assigned in ``order``; after assigning step ``t`` the
    constraints ``cstart[t] .. cstart[t+1]-1`` are checked.  A constraint
    reads the positions ``cpos[cpoff[c] : cpoff[c]+clen[c]]`` as a base-q key;
    with ``ctarget[c] < 0`` the key must be in ``adm_keys``, otherwise the
    key must be in ``rule_keys`` with output equal to ``x[ctarget[c]]``.
    """
    rule_index = {k: o for k, o in zip(rule_keys, rule_out)}
    adm = set(adm_keys)
    x = [0] * n
    found = []
    count = 0
    choice = [-1] * (n + 1)
    t = 0
    while t >= 0:
        choice[t] += 1
        if choice[t] >= q:
            choice[t] = -1
            t -= 1
            continue
        x[order[t]] = choice[t]
        ok = True
        for c in range(cstart[t], cstart[t + 1]):
            off = cpoff[c]
            key = 0
            for j in range(off, off + clen[c]):
                key = key * q + x[cpos[j]]
            tgt = ctarget[c]
            if tgt < 0:
                if key not in adm:
                    ok = False
                    break
            else:
                out = rule_index.get(key)
                if out is None or out != x[tgt]:
                    ok = False
                    break
        if not ok:
            continue
        if t == n - 1:
            count += 1
            if collect:
                found.append(tuple(x))
            continue
        t += 1
    return count, found
