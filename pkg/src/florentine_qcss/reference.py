"""Published reference values shipped as read-only fixture data.

``FLORENTINE_LITERATURE`` maps n to the (low, high) range of possible F(n)
reported for Florentine rectangles. The QCSS tables list
``(N, K, rho)`` rows; ``THREE_FACTOR_COMPARISON`` adds the set size and
rho of the earlier odd-N construction for comparison.
"""

FLORENTINE_LITERATURE = {
    1: (1, 1), 2: (2, 2), 3: (2, 2), 4: (4, 4), 5: (4, 4), 6: (6, 6), 7: (6, 6),
    8: (7, 7), 9: (8, 8), 10: (10, 10), 11: (10, 10), 12: (12, 12), 13: (12, 13),
    14: (6, 14), 15: (6, 15), 16: (16, 16), 17: (16, 17), 18: (18, 18), 19: (18, 19),
    20: (6, 20), 21: (6, 21), 22: (22, 22), 23: (22, 23), 24: (6, 24), 25: (6, 25),
    26: (6, 26), 27: (6, 27), 28: (28, 28), 29: (28, 29), 30: (30, 30), 31: (30, 31),
    32: (6, 32),
}

# Asymptotically optimal sets, even N.
EVEN_OPTIMAL = [
    (6, 36, 1.3754), (10, 100, 1.2551), (12, 144, 1.2247), (18, 324, 1.1722),
    (22, 484, 1.1518), (28, 784, 1.1310), (30, 900, 1.1257), (36, 1296, 1.1128),
    (40, 1600, 1.1061), (42, 1764, 1.1031), (46, 2116, 1.0978), (48, 288, 1.3754),
    (52, 2704, 1.0912), (58, 3364, 1.0857), (60, 3600, 1.0841), (66, 4356, 1.0797),
    (70, 4900, 1.0771), (72, 5184, 1.0759), (76, 456, 1.3754), (78, 6084, 1.0726),
    (82, 6724, 1.0706), (88, 7744, 1.0679), (90, 540, 1.3754), (96, 9216, 1.0647),
    (100, 10000, 1.0633),
]

# Near-optimal sets, even N. The N=36 row disagrees with EVEN_OPTIMAL
# (37 is prime, so F(36) = 36 and K = 1296, not 144).
EVEN_NEAR_OPTIMAL = [
    (14, 56, 1.5382), (20, 80, 1.5382), (24, 96, 1.5382), (26, 104, 1.5382),
    (36, 144, 1.5382), (38, 152, 1.5382), (44, 176, 1.5382), (50, 200, 1.5382),
]

# (N, K, K_prev, rho, rho_prev) for N whose smallest prime factor is 3.
THREE_FACTOR_COMPARISON = [
    (15, 60, 30, 1.5382, 1.9653),
    (21, 84, 42, 1.5382, 1.9755),
    (33, 132, 66, 1.5382, 1.9846),
    (105, 420, 210, 1.5382, 1.9952),
    (165, 660, 330, 1.5382, 1.9970),
    (1155, 4620, 2310, 1.5382, 1.9996),
    (15015, 60060, 30030, 1.5382, 2.0000),
    (255255, 1021020, 510510, 1.5382, 2.0000),
]

# Small cases checked against the Welch bound: (K, M, N, delta_max, rho).
WELCH_CASES = [(4, 2, 2, 2, 1.6584), (6, 3, 3, 3, 1.7950)]

RHO_PRINT_TOL = 5e-5
