"""Hot numeric kernels on int64/float64 arrays.

Every function here is written in nopython-compatible style and compiled
with numba unless ``GM_BACKEND=python`` selects the plain-Python fallback
(see ``_backend``).  The ``*_py`` aliases always point at the uncompiled
versions so tests and the backend benchmark can compare the two.

Values fed to these kernels must keep intermediate products inside int64;
the Python-object API in ``zi``/``symbols`` has no such restriction and is
the reference the kernels are tested against.
"""

from __future__ import annotations

import math

import numpy as np

from ._backend import njit, prange

PI = math.pi


# ---------------------------------------------------------------------------
# quartic / quadratic residue symbol
# ---------------------------------------------------------------------------


def _quartic_exp(ar, ai, nr, ni):
    """Exponent k with (a/n)_4 = i**k, or -1 when gcd(a, n) != 1.

    n must be primary with odd norm.  Euclidean descent: reduce a mod n,
    strip i and (1+i) factors via the supplement laws, flip with quartic
    reciprocity, swap.  Each pass at least halves the modulus norm.
    """
    acc = 0
    while True:
        nn = nr * nr + ni * ni
        if nn == 1:
            return acc & 3
        # a mod n with per-coordinate round-half-toward-minus-infinity
        ur = ar * nr + ai * ni
        ui = ai * nr - ar * ni
        d = 2 * nn
        qr = -((-(2 * ur - nn)) // d)
        qi = -((-(2 * ui - nn)) // d)
        rr = ar - (qr * nr - qi * ni)
        ri = ai - (qr * ni + qi * nr)
        if rr == 0 and ri == 0:
            return -1
        # r = i**s * (1+i)**t * r1 with r1 primary
        t = 0
        while (rr * rr + ri * ri) % 2 == 0:
            rr, ri = (rr + ri) // 2, (ri - rr) // 2
            t += 1
        rot = 0
        while not (
            (rr % 4 == 1 and ri % 4 == 0) or (rr % 4 == 3 and ri % 4 == 2)
        ):
            rr, ri = -ri, rr
            rot += 1
        s = (4 - rot) & 3
        # supplements for the current primary modulus n = A + Bi:
        # (i/n)_4 = i**((1-A)/2), ((1+i)/n)_4 = i**((A-B-1-B^2)/4)
        acc += s * ((1 - nr) // 2)
        acc += t * ((nr - ni - 1 - ni * ni) // 4)
        # reciprocity: (r1/n)_4 = (n/r1)_4 * (-1)**(((N(n)-1)/4)((N(r1)-1)/4))
        rn = rr * rr + ri * ri
        acc += 2 * (((nn - 1) // 4) & 1) * (((rn - 1) // 4) & 1)
        ar, ai = nr, ni
        nr, ni = rr, ri


def _make_quad_sym(quartic_fn):
    def quad_sym(ar, ai, nr, ni):
        """Quadratic symbol (a/n) in {-1, 0, 1}; n primary, odd norm."""
        k = quartic_fn(ar, ai, nr, ni)
        if k < 0:
            return 0
        if k & 1:
            return -1
        return 1

    return quad_sym


quartic_exp_py = _quartic_exp
quartic_exp = njit(_quartic_exp)
quad_sym_py = _make_quad_sym(quartic_exp_py)
quad_sym = njit(_make_quad_sym(quartic_exp))


# ---------------------------------------------------------------------------
# ideal table: smallest-prime-factor links for multiplicative sieving
# ---------------------------------------------------------------------------


def _spf_links(id_re, id_im, id_norm, pos, X):
    """Eratosthenes-style pass over the ideal list (sorted by norm).

    pos is the (re, im) -> index grid (-1 outside).  Returns, per ideal,
    the index of a smallest-norm prime ideal divisor and of the cofactor
    ideal; primes and the unit ideal keep (-1, -1).
    """
    n = id_norm.size
    spf = np.full(n, -1, np.int64)
    cof = np.full(n, -1, np.int64)
    for k in range(1, n):
        if spf[k] >= 0:
            continue
        # k is a prime ideal: claim its proper multiples in norm order
        pr = id_re[k]
        pi_ = id_im[k]
        mmax = X // id_norm[k]
        for m in range(1, n):
            if id_norm[m] > mmax:
                break
            gr = pr * id_re[m] - pi_ * id_im[m]
            gi = pr * id_im[m] + pi_ * id_re[m]
            while not (gr >= 1 and gi >= 0):
                gr, gi = -gi, gr
            t = pos[gr, gi]
            if spf[t] < 0:
                spf[t] = k
                cof[t] = m
    return spf, cof


spf_links_py = _spf_links
spf_links = njit(_spf_links)


# ---------------------------------------------------------------------------
# bulk central values via the multiplicative chi fill
# ---------------------------------------------------------------------------


def _make_lvalues_bulk(quad_sym_fn):
    def lvalues_bulk(
        fam_re,
        fam_im,
        fam_norm,
        limits,
        id_norm,
        inv_sqrt_norm,
        prime_pos,
        prime_re,
        prime_im,
        spf,
        cof,
    ):
        """L(1/2, chi_c) for each family member c.

        Per c: quadratic symbols at prime ideals below the cutoff, a
        multiplicative fill over composite ideals, then a compensated sum
        of 2 * chi(A) * N(A)**-1/2 * erfc(sqrt(pi*N(A)/sqrt(N(c)))) in
        norm-ascending order.  Each c is sequential and writes only its
        own slot, so results do not depend on the thread count.
        """
        out = np.empty(fam_re.size, np.float64)
        for j in prange(fam_re.size):
            cr = fam_re[j]
            ci = fam_im[j]
            limit = limits[j]
            sqrt_nc = math.sqrt(float(fam_norm[j]))
            chi = np.zeros(limit, np.int8)
            chi[0] = 1
            for p in range(prime_pos.size):
                k = prime_pos[p]
                if k >= limit:
                    break
                chi[k] = quad_sym_fn(prime_re[p], prime_im[p], cr, ci)
            for k in range(1, limit):
                if spf[k] >= 0:
                    chi[k] = chi[spf[k]] * chi[cof[k]]
            total = 0.0
            comp = 0.0
            for k in range(limit):
                if chi[k] != 0:
                    term = (
                        chi[k]
                        * inv_sqrt_norm[k]
                        * math.erfc(math.sqrt(PI * id_norm[k] / sqrt_nc))
                    )
                    y = term - comp
                    t = total + y
                    comp = (t - total) - y
                    total = t
            out[j] = 2.0 * total
        return out

    return lvalues_bulk


# numba.prange degrades to range when called un-jitted, so the _py variant
# is sequential plain Python even when the numba backend is active.
lvalues_bulk_py = _make_lvalues_bulk(quad_sym_py)
lvalues_bulk = njit(parallel=True)(_make_lvalues_bulk(quad_sym))


def _make_smoothed_series(quad_sym_fn):
    def smoothed_series(cr, ci, id_re, id_im, id_norm, deltas):
        """sum over ideals of chi_c(A) N(A)**-1/2 exp(-N(A)*delta), per delta.

        Direct per-ideal symbols (no multiplicative fill): this is the
        independent conditional-convergence oracle path.
        """
        out = np.empty(deltas.size, np.float64)
        chi = np.empty(id_norm.size, np.float64)
        for k in range(id_norm.size):
            chi[k] = quad_sym_fn(id_re[k], id_im[k], cr, ci)
        for d in range(deltas.size):
            delta = deltas[d]
            total = 0.0
            comp = 0.0
            for k in range(id_norm.size):
                if chi[k] != 0.0:
                    n = float(id_norm[k])
                    term = chi[k] / math.sqrt(n) * math.exp(-n * delta)
                    y = term - comp
                    t = total + y
                    comp = (t - total) - y
                    total = t
            out[d] = total
        return out

    return smoothed_series


smoothed_series_py = _make_smoothed_series(quad_sym_py)
smoothed_series = njit(_make_smoothed_series(quad_sym))


# ---------------------------------------------------------------------------
# family / squarefree scanning
# ---------------------------------------------------------------------------


def _squarefree_mask(cand_re, cand_im, cand_norm, primes, out):
    """Squarefree test for odd-norm candidates from their norm factorization.

    Per rational prime p | N(c): p = 3 (4) is inert, exponent 2e in the
    norm means exponent e in c, so squarefree iff v_p(N) <= 2; p = 1 (4)
    splits, v_p(N) >= 3 forces a repeated Gaussian prime and v_p(N) == 2
    is squarefree iff p | c (else it is pi**2).  primes must cover
    sqrt(max N); the leftover cofactor is then prime to exponent 1.
    """
    for j in range(cand_norm.size):
        n = cand_norm[j]
        ok = True
        for t in range(primes.size):
            p = primes[t]
            if p * p > n:
                break
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                if e > 2:
                    ok = False
                    break
                if e == 2 and p % 4 == 1:
                    if cand_re[j] % p != 0 or cand_im[j] % p != 0:
                        ok = False
                        break
        out[j] = ok


squarefree_mask_py = _squarefree_mask
squarefree_mask = njit(_squarefree_mask)


# ---------------------------------------------------------------------------
# quadratic Gauss sum: exact phase-bucket accumulation
# ---------------------------------------------------------------------------


def _make_gauss_buckets(quad_sym_fn):
    def gauss_buckets(nr, ni):
        """Integer sums S[v] = sum of (x/n) over residues x with
        Im(x * conj(n)) = v, v in [0, N); then g(n) = sum S[v] e(v/N).

        Residues are the lattice points of the half-open fundamental
        parallelogram spanned by n and i*n, detected exactly via
        0 <= Re(x conj n) < N and 0 <= Im(x conj n) < N.
        """
        N = nr * nr + ni * ni
        out = np.zeros(N, np.int64)
        xlo = min(0, nr, -ni, nr - ni)
        xhi = max(0, nr, -ni, nr - ni)
        ylo = min(0, ni, nr, nr + ni)
        yhi = max(0, ni, nr, nr + ni)
        for x in range(xlo, xhi + 1):
            for y in range(ylo, yhi + 1):
                u = x * nr + y * ni
                if u < 0 or u >= N:
                    continue
                v = y * nr - x * ni
                if v < 0 or v >= N:
                    continue
                out[v] += quad_sym_fn(x, y, nr, ni)
        return out

    return gauss_buckets


gauss_buckets_py = _make_gauss_buckets(quad_sym_py)
gauss_buckets = njit(_make_gauss_buckets(quad_sym))


# ---------------------------------------------------------------------------
# lattice sums and counts
# ---------------------------------------------------------------------------


def _int_sqrt(x):
    r = int(math.sqrt(float(x)))
    while r * r > x:
        r -= 1
    while (r + 1) * (r + 1) <= x:
        r += 1
    return r


int_sqrt = njit(_int_sqrt)
_isqrt_py = _int_sqrt


def _make_zeta2(isqrt_fn):
    def zeta2_lattice_sum(T):
        """Compensated sum of N(A)**-2 over ideals (re>=1, im>=0), norm <= T.

        Fixed scan order (re ascending, im ascending) keeps the result
        reproducible bit for bit.
        """
        total = 0.0
        comp = 0.0
        R = isqrt_fn(T)
        for a in range(1, R + 1):
            b2max = T - a * a
            bmax = isqrt_fn(b2max)
            for b in range(bmax + 1):
                n = float(a * a + b * b)
                term = 1.0 / (n * n)
                y = term - comp
                t = total + y
                comp = (t - total) - y
                total = t
        return total

    return zeta2_lattice_sum


zeta2_lattice_sum_py = _make_zeta2(_isqrt_py)
zeta2_lattice_sum = njit(_make_zeta2(int_sqrt))


def _make_residue_count(isqrt_fn):
    def residue_class_count(x):
        """#{a in Z[i] : a = 1 mod (1+i)^3, N(a) <= x}, exact.

        Scans re over both primary congruence branches and counts the
        matching im residues mod 4 in closed form.
        """
        total = 0
        R = isqrt_fn(x)
        for a in range(-R, R + 1):
            am = a % 4
            if am == 1:
                want = 0
            elif am == 3:
                want = 2
            else:
                continue
            B = isqrt_fn(x - a * a)
            total += (B - want) // 4 - (-B - want - 1) // 4
        return total

    return residue_class_count


residue_class_count_py = _make_residue_count(_isqrt_py)
residue_class_count = njit(_make_residue_count(int_sqrt))


# ---------------------------------------------------------------------------
# large sieve double sum
# ---------------------------------------------------------------------------


def _make_sieve_table(quad_sym_fn):
    def sieve_symbol_table(m_re, m_im, n_re, n_im):
        """Matrix S[j, k] = quadratic symbol (n_k / m_j)."""
        out = np.empty((m_re.size, n_re.size), np.int8)
        for j in prange(m_re.size):
            for k in range(n_re.size):
                out[j, k] = quad_sym_fn(n_re[k], n_im[k], m_re[j], m_im[j])
        return out

    return sieve_symbol_table


sieve_symbol_table_py = _make_sieve_table(quad_sym_py)
sieve_symbol_table = njit(parallel=True)(_make_sieve_table(quad_sym))


def _sieve_quadratic_form(table, coeff_re, coeff_im):
    """sum_m |sum_n a_n (n/m)|^2 with a fixed, ordered reduction."""
    total = 0.0
    for j in range(table.shape[0]):
        sr = 0.0
        si = 0.0
        for k in range(table.shape[1]):
            s = table[j, k]
            if s != 0:
                sr += s * coeff_re[k]
                si += s * coeff_im[k]
        total += sr * sr + si * si
    return total


sieve_quadratic_form_py = _sieve_quadratic_form
sieve_quadratic_form = njit(_sieve_quadratic_form)
