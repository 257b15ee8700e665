"""Measured constants, frozen after their first verification run.

Published reference values live next to the code that reproduces them;
this module only holds facts obtained by measurement in this repository.
"""

# Clamp interval for d = [z] - [x] - [y] in the three-track adder.
# Derived by widening from (-2, 3) until the exhaustive oracle check over all
# pairs of valid words of length <= 12 passed (verify.derive_adder_interval).
# Log of the derivation run:
#   interval=[-2,3] PASS kind=adder params=[] bound=377 checked=142129
# The minimal adder built with this interval is also equivalent to the one
# built with (-12, 12), far outside any reachable accepting difference.
ADDER_INTERVAL = (-2, 3)

# states(add_const(2**j)) / j for 1 <= j <= 16. Measured maximum 8.625 at j=16
# (138 states); sizes for j=1..16:
#   7 12 17 24 34 46 51 61 72 78 91 102 103 113 127 138
ADD_CONST_LOG_CEILING = 9.0

# Unminimized affine(n, 0) states / n**2 for n <= 30. Measured maximum 8.0
# (n=1: 8 states; n=30: 5576). The counting argument gives 36.
AFFINE_PREMIN_QUADRATIC = 36

# Unminimized linear_subseq(m, n, c) states / (m**2 * n**4) for n <= 10, c < n,
# m the minimal DFAO size. Measured maximum 1.25 (fib_word, n=1); 1.0625 for
# fib_thue_morse.
LINEAR_SUBSEQ_PREMIN_CEILING = 1.5

# Minimal linear_subseq(fib_word, n, 0) states / n**4 for n <= 10. Measured
# maximum 2.0 at n=1, then decreasing (0.0103 at n=10).
LINEAR_SUBSEQ_QUARTIC_CEILING = 2.0

# Minimal shift(m, c) states / max(c, 1) for c <= 50. Measured maximum 8.0
# (fib_thue_morse, c=1); 3.0 for fib_word.
SHIFT_LINEAR_CEILING = 8.0

# Trimmed product inside add_const_pipeline(c), states / log2(c + 2), over
# 1305 sampled c <= 2**14 plus every c <= 256. Measured maximum 17.24 (c <= 256)
# and 17.08 (c = 988); the untrimmed product peaked at 22.77 (c = 21).
ADD_PIPELINE_PRODUCT_LOG_CEILING = 18.0
ADD_PIPELINE_RAW_PRODUCT_LOG_CEILING = 24.0

# states(add_const(c)) <= K1 * log2(c + 2) + K2. Over every c < 3000 the
# measured maximum of states / log2(c + 2) is 8.644 and of
# states - 8 * log2(c + 2) is 7.30; the largest automaton has 98 states (c = 2994).
ADD_CONST_K1 = 9.0
ADD_CONST_K2 = 2.0

# subword_count(interior(fib_thue_morse), n) / (n * m**2) for n <= 30, m = 4.
# Measured maximum 0.4213 at n=27 (182 factors); counts for n=1..5: 4 10 16 22 28.
SUBWORD_CEILING = 0.5
