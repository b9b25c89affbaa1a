"""weilmass: local densities of symplectic characteristic polynomials and
masses of principally polarized abelian-surface isogeny classes over F_q.

Given a quartic Weil polynomial f(T) = T^4 - a T^3 + b T^2 - a q T + q^2
satisfying the ordinary / irreducible-abelian-Galois / maximal-order
hypotheses, the package computes exact local factors nu_ell (ell != p), the
p-adic factor nu_p, the archimedean factor nu_infinity, and verifies that
their conditionally convergent product converges to h(K)/h(K+)/omega_K,
computed independently through Dirichlet L-values at 1.  A brute-force
enumeration of Sp4(F_ell) (ell <= 5 mandatory, 7 opt-in) validates every
group-theoretic ingredient.
"""

from .arith import kronecker_symbol, factor_integer
from .characters import (CharacterGroup, DirichletCharacter, disc_K,
                         identify_characters, nu_ell_K, splitting_invariants)
from .classnumber import (ClassNumberData, imag_quadratic_h, omega_K,
                          relative_class_number)
from .errors import WeilMassError
from .fppoly import factor_monic_mod_ell
from .gsp4 import (ClassShape, GroupEnumeration, ShapeKind,
                   centralizer_order_bruteforce, centralizer_order_formula,
                   count_charpoly_in_fiber, count_cyclic_with_semisimplification,
                   count_semisimple_with_charpoly, enumerate_sp4,
                   frobenius_shape, multiplier, shape_of_element)
from .kernels import BACKEND as KERNEL_BACKEND
from .localfactors import (nu_ell, nu_infinity, nu_p, partial_products,
                           sato_tate_angle_density, sato_tate_weil_density)
from .weil import (GaloisType, ValidationReport, WeilInvariants,
                   WeilPolynomial, enumerate_corpus, galois_type, invariants,
                   validate)

__version__ = "0.1.0"
