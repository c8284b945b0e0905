"""Game semantics for Peano Arithmetic: PA proofs compile to descent
recursive winning strategies, cuts are eliminated by running canonical
debates governed by ordinal interaction sequences below epsilon_0, and
provably recursive functions and no-counter-example functionals are
extracted from theorems."""

__version__ = "0.1.0"
