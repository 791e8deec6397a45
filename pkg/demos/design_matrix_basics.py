#!/usr/bin/env python3
"""Tour of the core types: SB-blocks, the design matrix encoding, panels,
and exact condition checking on a 9-block design of K_{3,3}."""

import numpy as np

import sbbd

# The 9-block design on K_{3,3}: every block has 6 of the 9 edges.
rows = """
0,1,1,1,1,0,1,1,0
1,0,1,0,1,1,0,1,1
1,1,0,1,0,1,1,0,1
0,1,1,0,1,1,1,0,1
1,0,1,1,0,1,1,1,0
1,1,0,1,1,0,0,1,1
0,1,1,1,0,1,0,1,1
1,0,1,1,1,0,1,0,1
1,1,0,0,1,1,1,1,0
""".strip()

x = sbbd.matrix_from_csv(rows, v1=3, v2=3)
print(f"design matrix: {x.n_rows} rows x {x.v1 * x.v2} columns")

blocks = sbbd.matrix_to_blocks(x)
print(f"decoded {len(blocks)} SB-blocks; first block edges: {sorted(blocks[0].edges)}")

# column (i-1)*v2 + j carries edge (i, j); round-trip is bit exact
back = sbbd.blocks_to_matrix(blocks)
print("round-trip exact:", np.array_equal(back.matrix, x.matrix))

panels = sbbd.submatrix_partition(x)
print("panel shapes:", [p.shape for p in panels])
print("panel 1:")
print(panels[0])

# exact verification of the counting conditions
params = sbbd.check_sbbd(x)
print(f"Lambda = {params.lam}  (mu, l12, l21, l22)")
print("spanning:", sbbd.is_spanning(x))
print(f"coefficients a,b,c,d = {(params.a, params.b, params.c, params.d)}")

# flip any single bit and some condition must break
m = x.matrix.copy()
m[0, 0] ^= 1
try:
    sbbd.check_sbbd(sbbd.DesignMatrix(3, 3, m))
except sbbd.ConditionViolation as exc:
    print("after one bit flip:", exc)
