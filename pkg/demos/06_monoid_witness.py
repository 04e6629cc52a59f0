"""
Where coarsening genuinely breaks: the rational-exponent monoid algebra
=======================================================================

Over the algebra spanned by e(alpha) for rational alpha >= 0, the ideal
m generated by all e(alpha) with alpha > 0 is idempotent and not finitely
generated - every e(alpha) is the square of e(alpha/2).  That makes the
usual finiteness arguments for torsion functors fail, and this module
holds the finite, machine-checkable artifacts of that failure.

For a level K the witness map has one component per k = 1..K, each
landing in the quotient by the tail ideal above 1/k, shifted so the
component sits in degree k.  Every element of m hits only finitely many
components (local finiteness), yet the family exhausts arbitrarily many
degrees as K grows - the reason the full infinite statement lives outside
what a terminating computation can certify.
"""

from fractions import Fraction

from coarsecoh import (
    MonoidAlgebraElement,
    build_witness_hom,
    counterexample_report,
    idempotency_witness,
    non_finite_generation_witness,
)

e = MonoidAlgebraElement.basis

# arithmetic in the monoid algebra: exponents add
u = e(Fraction(1, 2)) + e(1)
print("(e(1/2) + e(1))^2 =", u * u)

# idempotency of m, one witness at a time
w = idempotency_witness(Fraction(1, 7))
print("e(%s) = e(%s)^2: verified = %s" % (w.alpha, w.half, w.verified))

# no finite set generates m: whatever the candidates, the element at
# half the least exponent present is out of reach
gap = non_finite_generation_witness([e(Fraction(1, 2)), e(Fraction(1, 3)) + e(1)])
print("\ncandidate floor %s, escaping element %r" % (gap.floor, gap.witness))
print("  " + gap.reason)

# the level-5 witness map: support, and where a sample element lands
f = build_witness_hom(5)
print("\nlevel-5 witness map: support degrees", [str(s) for s in f.support_degrees()])
sample = e(Fraction(1, 4))
hits = f.apply(sample)
print("e(1/4) hits components:", sorted(hits))
for k in sorted(hits):
    print("  k=%d -> %r" % (k, hits[k]))

# the bundled report: support size, probe table, idempotency and
# generation-gap certificates, and the one statement that is imported
# rather than checked
rep = counterexample_report(level=5, seed=0)
print("\nreport: support size %d, %d probes checked" % (len(rep.support), len(rep.probes)))
print(rep.external_claim)
