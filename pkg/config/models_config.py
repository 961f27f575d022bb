"""
Bundled crossed models, in the same keys as the [model] section of a scenario file.
"""

# C_2 acting on Z_3 by -1
P3_D1_C2 = {
    "p": "3",
    "d": "1",
    "C.order": "2",
    "C.mul": "0 1; 1 0",
    "C.action.0": "1",
    "C.action.1": "2",
}

# C_2 acting on Z_3^2 by diag(-1, 1)
P3_D2_C2 = {
    "p": "3",
    "d": "2",
    "C.order": "2",
    "C.mul": "0 1; 1 0",
    "C.action.0": "1 0; 0 1",
    "C.action.1": "2 0; 0 1",
}

# C_3 permuting the nonzero vectors of Z_2^2
P2_D2_C3 = {
    "p": "2",
    "d": "2",
    "C.order": "3",
    "C.mul": "0 1 2; 1 2 0; 2 0 1",
    "C.action.0": "1 0; 0 1",
    "C.action.1": "0 1; 1 1",
    "C.action.2": "1 1; 1 0",
}

# trivial C: E* is the exterior algebra on one generator
P3_D1_TRIVIAL = {
    "p": "3",
    "d": "1",
    "C.order": "1",
    "C.mul": "0",
    "C.action.0": "1",
}

BUNDLED_MODELS = {
    "p3-d1-c2": P3_D1_C2,
    "p3-d2-c2": P3_D2_C2,
    "p2-d2-c3": P2_D2_C3,
    "p3-d1-trivial": P3_D1_TRIVIAL,
}

# group pairs (G, U) built into smoothrep.groups
BUNDLED_GROUP_PAIRS = ("s3", "c4c2", "d4", "z3c2", "trivial-quotient")
