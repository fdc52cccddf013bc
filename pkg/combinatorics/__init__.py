"""
Symmetric-group combinatorics: permutations, signed permutations, Bruhat order,
reduced words, patterns, trees and signed forests.
"""
