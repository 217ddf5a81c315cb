"""groupfact: exact factorizations of finite groups with a solvable factor,
and the s-arc-transitive coset graphs they give rise to.

Subpackage map:

* permcore       permutation groups, stabilizer chains, subgroup machinery
* gfmat          finite fields GF(p^f) and matrix groups over them
* constructions  explicit factorizations of four classical-group families
* numth          the number-theoretic certificates (primitive prime divisors,
                 r-parts, solvable-order bounds, minimal degrees)
* factorlab      factorization verification, search, and the expected tables
* arcgraph       coset graphs, automorphisms, s-arc-transitivity
* cli            the ``groupfact`` command line tool
"""

__version__ = "0.1.0"

from . import permcore  # noqa: F401
