"""
Braid words and their permutations
==================================

Every braid sends strands to strands, giving a homomorphism onto the
symmetric group.  Its kernel, the pure braids, is far from trivial.
"""

from confspace.braid import (apply_relation, cycle_notation, exponent_sum, free_reduce, is_pure,
                             parse_word, permutation_image)

w = parse_word("s1 s2 S1 S2")
print(w, "->", cycle_notation(permutation_image(w)))

# sigma_1 squared: a full twist of two strands.  Pure, but not trivial.
twist = parse_word("s1 s1", 3)
print(twist, "pure:", is_pure(twist), "exponent sum:", exponent_sum(twist))

# Relation moves change the word and keep both invariants.
v = parse_word("s1 s2 s1 s3")
u = apply_relation(v, 0, "braid")
print(v, "=>", u, "| same permutation:", permutation_image(u) == permutation_image(v))

print(free_reduce(parse_word("s2 s1 S1 S3 s3 s2")))
