"""Independent floating-point oracles for twistor fibres.

Everything here is rebuilt from the rational Gram matrix and the numeric
embeddings of K only.  A twistor point is found by solving the conic and
the orthogonality condition directly at every complex embedding; rational
subspaces (Hodge endomorphisms, (1,1) classes) are kernels of real linear
systems stacked over all those embeddings, which are Galois stable, so the
real kernel dimension is the rational one.  Nothing is shared with the exact
solver except the inputs.
"""
import mpmath
import sympy

DPS = 60
GAP = mpmath.mpf(10) ** -30


def _f(q):
    return mpmath.mpf(int(q.numerator)) / int(q.denominator)


def _embed(e, z):
    return mpmath.fsum(_f(c) * z ** i for i, c in enumerate(e.coeffs))


def _roots(field):
    coeffs = [_f(c) for c in reversed(field.modulus.coeffs)]
    return mpmath.polyroots(coeffs, maxsteps=500, extraprec=4 * DPS)


def _kernel_dim(rows, ncols):
    """Numerical nullity of a real matrix, with a checked gap in the spectrum."""
    A = mpmath.matrix(rows)
    scale = max(abs(x) for x in A) or 1
    A = A / scale
    N = A.T * A
    eig = sorted(abs(x) for x in mpmath.eigsy(N)[0])
    small = [x for x in eig if x < GAP]
    if len(small) < len(eig) and eig[len(small)] < mpmath.mpf(10) ** -12:
        raise AssertionError(f"no clear spectral gap: {[mpmath.nstr(x, 3) for x in eig]}")
    return len(small)


def twistor_points(setup, vector):
    """Periods a*sigma + b*sigma-bar + l (as pairings with T + Ql) orthogonal to
    the class, one pair per complex embedding of K."""
    with mpmath.workdps(DPS):
        H = setup.base
        r, d = setup.r, setup.d
        G = [[_f(x) for x in row] for row in H.space.matrix()]
        Gi = mpmath.inverse(mpmath.matrix(G))
        c = [_f(x) for x in vector[:r]]
        mu = _f(vector[r])
        pts = []
        for z in _roots(H.ambient):
            x = [_embed(e, z) for e in H.sigma_coords]
            xb = [_embed(e, z) for e in H.sigma_bar_coords]
            S = mpmath.fsum(x[i] * Gi[i, j] * xb[j] for i in range(r) for j in range(r))
            P = mpmath.fsum(x[i] * c[i] for i in range(r))
            Pb = mpmath.fsum(xb[i] * c[i] for i in range(r))
            # (Pi, l') = aP + bPb + mu d = 0 and (Pi, Pi) = 2ab S + d = 0
            qa, qb, qc = 2 * S * P, 2 * S * mu * d, -d * Pb
            disc = mpmath.sqrt(qb * qb - 4 * qa * qc)
            for a in ((-qb + disc) / (2 * qa), (-qb - disc) / (2 * qa)):
                b = -(a * P + mu * d) / Pb
                pts.append(([a * x[i] + b * xb[i] for i in range(r)] + [mpmath.mpf(d)], x, xb, a, b, S))
        return pts


def _perp_basis(setup, vector):
    G = sympy.Matrix([[sympy.Rational(int(x.numerator), int(x.denominator)) for x in row]
                      for row in setup.extended_gram])
    v = sympy.Matrix([sympy.Rational(int(x.numerator), int(x.denominator)) for x in vector])
    N = (v.T * G).nullspace()
    return sympy.Matrix.hstack(*N), G


def conic_residuals(setup, vector):
    """max |(Pi, Pi)| and |(Pi, l')| over all points (should vanish)."""
    with mpmath.workdps(DPS):
        worst = mpmath.mpf(0)
        for pi, x, xb, a, b, S in twistor_points(setup, vector):
            worst = max(worst, abs(2 * a * b * S + setup.d))
            ortho = mpmath.fsum(pi[i] * _f(vector[i]) for i in range(setup.r)) + pi[setup.r] * _f(vector[-1])
            worst = max(worst, abs(ortho))
        return worst


def endomorphism_dimension(setup, vector):
    """dim_Q of the Hodge endomorphisms of the fibre l'^perp."""
    with mpmath.workdps(DPS):
        N, G = _perp_basis(setup, vector)
        r = N.shape[1]
        Gp = N.T * G * N
        Gpf = mpmath.matrix([[mpmath.mpf(int(x.p)) / int(x.q) for x in Gp.row(i)] for i in range(r)])
        Gpi = mpmath.inverse(Gpf)
        Nf = [[mpmath.mpf(int(N[i, j].p)) / int(N[i, j].q) for j in range(r)] for i in range(N.shape[0])]
        rows = []
        for pi, *_ in twistor_points(setup, vector):
            y = [mpmath.fsum(pi[i] * Nf[i][j] for i in range(len(pi))) for j in range(r)]
            c = [mpmath.fsum(Gpi[i, j] * y[j] for j in range(r)) for i in range(r)]
            # M c parallel to c and G'^-1 M^T y parallel to c, linear in the entries of M
            for i in range(r):
                for j in range(i + 1, r):
                    row = [mpmath.mpc(0)] * (r * r)
                    for k in range(r):
                        row[i * r + k] += c[k] * c[j]
                        row[j * r + k] -= c[k] * c[i]
                    adj = [mpmath.mpc(0)] * (r * r)
                    for p in range(r):
                        for q in range(r):
                            # (G'^-1 M^T y)_i = sum_p Gpi[i,p] sum_q M[q,p] y_q
                            adj[q * r + p] += Gpi[i, p] * y[q] * c[j] - Gpi[j, p] * y[q] * c[i]
                    for rr in (row, adj):
                        rows.append([mpmath.re(t) for t in rr])
                        rows.append([mpmath.im(t) for t in rr])
        return _kernel_dim(rows, r * r)


def picard_number(setup, vector):
    """dim_Q of the rational classes of T + Ql orthogonal to the period."""
    with mpmath.workdps(DPS):
        rows = []
        for pi, *_ in twistor_points(setup, vector):
            rows.append([mpmath.re(t) for t in pi])
            rows.append([mpmath.im(t) for t in pi])
        return _kernel_dim(rows, setup.r + 1)


def distinguished_discriminant_signs(setup, vector):
    """Signs of m^2 + 2d/s' at the real places of K0, from a direct float
    computation of s' = (sigma, sigma-bar)/|(sigma, l')|^2 at each embedding."""
    with mpmath.workdps(DPS):
        r, d = setup.r, setup.d
        m = _f(vector[r]) * d
        H = setup.base
        G = [[_f(x) for x in row] for row in H.space.matrix()]
        Gi = mpmath.inverse(mpmath.matrix(G))
        c = [_f(x) for x in vector[:r]]
        out = {}
        for z in _roots(H.ambient):
            x = [_embed(e, z) for e in H.sigma_coords]
            xb = [_embed(e, z) for e in H.sigma_bar_coords]
            S = mpmath.re(mpmath.fsum(x[i] * Gi[i, j] * xb[j] for i in range(r) for j in range(r)))
            P = mpmath.fsum(x[i] * c[i] for i in range(r))
            sp = S / abs(P) ** 2
            D = m * m + 2 * d / sp
            # z and its conjugate restrict to the same real place of K0
            place = (mpmath.nstr(mpmath.re(z), 25), mpmath.nstr(abs(mpmath.im(z)), 25))
            out[place] = 1 if D > 0 else -1
        return sorted(out.values())
