#!/usr/bin/env python3
"""Solve an exported sparse SDPA file and write the block matrices.

The output lists every PSD block's optimal value in the numeric solution
layout understood by `wturan flag round`:

    block 0 <dim>
    <dim rows of dim floats>
    ...

Diagonal (negative size) blocks are slack and are not written.
"""
import argparse
import sys

import numpy as np
import scipy.sparse as sp


def parse_sdpa(path):
    rows = []
    with open(path) as fh:
        for raw in fh:
            line = raw.strip()
            if not line or line[0] in '"*':
                continue
            for ch in ',{}()':
                line = line.replace(ch, ' ')
            rows.append(line.split())
    mdim = int(rows[0][0])
    nblock = int(rows[1][0])
    sizes = [int(t) for t in rows[2][:nblock]]
    costs = [int(t) for t in rows[3][:mdim]]
    entries = [(int(m), int(b), int(i), int(j), int(v)) for m, b, i, j, v in rows[4:]]
    return mdim, sizes, costs, entries


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument('input', help='sparse SDPA problem (.dat-s)')
    ap.add_argument('output', help='numeric solution file to write')
    ap.add_argument('--solver', default='CLARABEL', choices=['CLARABEL', 'CVXOPT', 'SCS'])
    args = ap.parse_args()

    import cvxpy as cp

    mdim, sizes, costs, entries = parse_sdpa(args.input)
    x = cp.Variable(mdim)

    by_block = {}
    for m, b, i, j, v in entries:
        by_block.setdefault(b, []).append((m, i, j, v))

    # S_b = sum_i x_i F_{i,b} - F_{0,b}; PSD blocks constrain matrices,
    # diagonal blocks constrain their diagonals entrywise
    constraints = []
    block_exprs = []
    for b, size in enumerate(sizes, start=1):
        dim = abs(size)
        items = by_block.get(b, [])
        if size > 0:
            # rows of A index the flattened dim x dim matrix
            rc, cc, vc = [], [], []
            f0 = np.zeros((dim, dim))
            for m, i, j, v in items:
                cells = {(i - 1, j - 1), (j - 1, i - 1)}
                if m == 0:
                    for r, c in cells:
                        f0[r, c] += v
                else:
                    for r, c in cells:
                        rc.append(r * dim + c)
                        cc.append(m - 1)
                        vc.append(v)
            a = sp.coo_matrix((vc, (rc, cc)), shape=(dim * dim, mdim)).tocsr()
            expr = cp.reshape(a @ x, (dim, dim), order='C') - f0
            constraints.append(expr >> 0)
            block_exprs.append(expr)
        else:
            rc, cc, vc = [], [], []
            d0 = np.zeros(dim)
            for m, i, j, v in items:
                if m == 0:
                    d0[i - 1] += v
                else:
                    rc.append(i - 1)
                    cc.append(m - 1)
                    vc.append(v)
            a = sp.coo_matrix((vc, (rc, cc)), shape=(dim, mdim)).tocsr()
            constraints.append(a @ x - d0 >= 0)
            block_exprs.append(None)

    problem = cp.Problem(cp.Minimize(np.array(costs, dtype=float) @ x), constraints)
    problem.solve(solver=args.solver, verbose=False)
    if problem.status not in ('optimal', 'optimal_inaccurate'):
        print(f'solver finished with status {problem.status}', file=sys.stderr)
        return 1

    with open(args.output, 'w') as out:
        out.write(f'# solver {args.solver}, status {problem.status}, objective {problem.value:.12f}\n')
        idx = 0
        for expr in block_exprs:
            if expr is None:
                continue
            mat = np.asarray(expr.value)
            out.write(f'block {idx} {mat.shape[0]}\n')
            for row in mat:
                out.write(' '.join(f'{v:.12g}' for v in row) + '\n')
            idx += 1
    print(f'objective {problem.value:.12f} ({problem.status})')
    return 0


if __name__ == '__main__':
    sys.exit(main())
