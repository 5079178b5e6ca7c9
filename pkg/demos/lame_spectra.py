"""Ellipsoidal (Lame) harmonics on the sphere and what becomes of them.

The operator a1 L1^2 + a2 L2^2 + a3 L3^2 commutes with the sphere Laplacian, so
on each space of degree-l harmonics it has 2l + 1 eigenvalues. Two
independent routes compute them here: the three-term recursion of the
Lame polynomial coefficients (one tridiagonal problem per parity class) and a
dense diagonalization of the operator on the Y_lm basis. They must agree.

Then the sphere is blown up. In the contraction limit the separated Lame
equation becomes the Mathieu equation (elliptic coordinates on the plane) or
the parabolic-cylinder equation, and the coefficient mismatch shrinks with R.

Run with ``python demos/lame_spectra.py``.
"""
import numpy as np

from contraction_lab import lame as L

a = (0.3, 1.1, 2.0)

print("Lame spectra for a = %s" % (a,))
for l in range(1, 6):
    ev = L.all_eigenvalues(l, a)
    q = sorted(L.q_from_lambda(v) for vals in ev.values() for v in vals)
    dev = np.max(np.abs(np.asarray(q) - np.asarray(L.oracle_q_spectrum(l, a))))
    classes = ", ".join("%s:%d" % ("".join(map(str, al)), len(v)) for al, v in sorted(ev.items()))
    print("  l=%d  %2d eigenvalues  (%s)  max gap to dense route %.1e" % (l, len(q), classes, dev))

print()
print("One eigenfunction, l = 2, parity (0, 0, 0), first coefficient set to 1")
s = L.LameSystem(2, (0, 0, 0), a)
lam = L.secular_eigenvalues(s)[0]
print("  lambda = %.6f, coefficients %s" % (lam, np.round(L.coefficients(s, lam), 6)))

print()
print("Separated equation against its flat limit")
for R in (10, 100, 1000):
    m = L.mathieu_ode_coeffs(R, 0.0, 1.0, 2.0, 1.0, "eta")
    p = L.pcf_ode_limit(R, 1.0, 1.0, "u")
    print("  R = %5d   Mathieu mismatch %.2e   parabolic-cylinder mismatch %.2e" % (R, m.error, p.error))
