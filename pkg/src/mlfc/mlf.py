"""Evaluation of E_{alpha,beta}(z) = sum_k z^k / Gamma(alpha*k + beta).

Three cooperating regimes:

* small |z|: truncated power series in float64, used only while the
  worst-case cancellation (max term ~ exp(|z|^(1/alpha))) leaves enough
  mantissa for the requested tolerance;
* large |z|: exponential-plus-algebraic expansion with a computable
  self-estimate of its own error (first omitted algebraic term plus the
  magnitude of every dropped exponential branch);
* everything else: the arbitrary-precision series (same code path as the
  verification oracle) at a working precision that covers the cancellation.

The oracle sums the defining series in mpmath with reciprocal-gamma tables
built by integer-stepped Gamma recurrences, truncates on a rigorous
geometric tail bound, and re-runs at higher precision until the result is
certifiably above its own rounding noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp
import numpy as np
from scipy import special as sps

from .errors import (
    NonFinite,
    OutsideSector,
    OutsideValidity,
    PrecisionExhausted,
    ToleranceUnreachable,
)

LOG10E = math.log10(math.e)

# regime tags carried by MLParams (a value can hold several)
TAG_BETA_GE_ALPHA_PLUS_1 = "beta>=alpha+1"
TAG_BETA_BETWEEN_1_AND_ALPHA_PLUS_1 = "1<beta<alpha+1"
TAG_BETA_EQ_1 = "beta=1"
TAG_BETA_EQ_ALPHA = "beta=alpha"
TAG_ALPHA_EQ_2 = "alpha=2"
TAG_OTHER = "other"

_EQ_TOL = 1e-12


@dataclass(frozen=True)
class MLParams:
    """The order pair (alpha, beta), 0 < alpha <= 2, beta real."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (0.0 < self.alpha <= 2.0):
            raise ValueError(f"alpha must lie in (0, 2], got {self.alpha}")
        if not math.isfinite(self.beta):
            raise ValueError("beta must be finite")

    def regime_tags(self) -> frozenset[str]:
        a, b = self.alpha, self.beta
        tags = set()
        if b >= a + 1 - _EQ_TOL:
            tags.add(TAG_BETA_GE_ALPHA_PLUS_1)
        elif 1.0 + _EQ_TOL < b:
            tags.add(TAG_BETA_BETWEEN_1_AND_ALPHA_PLUS_1)
        if abs(b - 1.0) <= _EQ_TOL:
            tags.add(TAG_BETA_EQ_1)
        if abs(b - a) <= _EQ_TOL:
            tags.add(TAG_BETA_EQ_ALPHA)
        if abs(a - 2.0) <= _EQ_TOL:
            tags.add(TAG_ALPHA_EQ_2)
        if not tags:
            tags.add(TAG_OTHER)
        return frozenset(tags)


@dataclass(frozen=True)
class SectorBoundParams:
    """Constants (C1, C2) and half-angle of the sector envelope bound."""

    c1: float
    c2: float
    theta_sector: float

    def __post_init__(self):
        if self.c1 <= 0 or self.c2 <= 0:
            raise ValueError("envelope constants must be positive")
        if not (0 < self.theta_sector <= math.pi):
            raise ValueError("theta_sector must lie in (0, pi]")


def rotation(alpha: float) -> complex:
    """i**alpha on the principal branch, exp(i*pi*alpha/2)."""
    return complex(np.exp(1j * math.pi * alpha / 2.0))


# ---------------------------------------------------------------------------
# closed forms (exact identities, used as fast paths and in identity tests)


def _closed_form_many(alpha: float, beta: float, z: np.ndarray) -> np.ndarray | None:
    if abs(alpha - 1.0) <= _EQ_TOL and abs(beta - 1.0) <= _EQ_TOL:
        return np.exp(z)
    if abs(alpha - 1.0) <= _EQ_TOL and abs(beta - 2.0) <= _EQ_TOL:
        out = np.empty_like(z)
        small = np.abs(z) < 1e-4
        zs = z[small]
        out[small] = 1.0 + zs / 2.0 + zs * zs / 6.0 + zs * zs * zs / 24.0
        zl = z[~small]
        out[~small] = (np.exp(zl) - 1.0) / zl
        return out
    if abs(alpha - 2.0) <= _EQ_TOL and abs(beta - 1.0) <= _EQ_TOL:
        return np.cosh(np.sqrt(z))
    if abs(alpha - 2.0) <= _EQ_TOL and abs(beta - 2.0) <= _EQ_TOL:
        out = np.empty_like(z)
        w = np.sqrt(z)
        small = np.abs(w) < 1e-4
        out[small] = 1.0 + z[small] / 6.0
        out[~small] = np.sinh(w[~small]) / w[~small]
        return out
    return None


# ---------------------------------------------------------------------------
# float64 power series


_FLOAT_RG_CACHE: dict[tuple[float, float, int], np.ndarray] = {}


def _float_rgamma_table(alpha: float, beta: float, kmax: int) -> np.ndarray:
    key = (alpha, beta, kmax)
    tab = _FLOAT_RG_CACHE.get(key)
    if tab is None:
        tab = sps.rgamma(alpha * np.arange(kmax + 1) + beta)
        _FLOAT_RG_CACHE[key] = tab
    return tab


def taylor_radius(alpha: float, rel_tol: float, r0: float) -> float:
    """Largest |z| where the float64 series keeps rel_tol through cancellation.

    Max series term is ~exp(|z|^(1/alpha)); float64 carries ~15.9 digits.
    """
    need = -math.log10(rel_tol)
    headroom = 15.3 - need - 1.0
    if headroom <= 0.3:
        return 0.0
    return min(r0, (headroom / LOG10E) ** alpha)


def _term_log10(alpha: float, beta: float, az: float, k) -> float:
    x = np.maximum(alpha * np.asarray(k, dtype=float) + beta, 1e-3)
    return k * math.log10(az) - sps.gammaln(x) / math.log(10.0)


def _series_kstop(alpha: float, beta: float, az: float, drop_digits: float) -> int:
    """First k past the series peak where terms have fallen ``drop_digits``
    decades below the maximum term."""
    if az <= 0:
        return 1
    kpeak = max(az ** (1.0 / alpha) / alpha, 1.0)
    peak = _term_log10(alpha, beta, az, kpeak)
    target = peak - drop_digits
    k = kpeak * 1.2 + 8.0
    while _term_log10(alpha, beta, az, k) > target:
        k *= 1.25
        if k > 1e8:
            break
    return int(k) + 8


def _taylor_many(alpha: float, beta: float, z: np.ndarray, rel_tol: float) -> np.ndarray:
    azmax = float(np.max(np.abs(z))) if z.size else 0.0
    if azmax == 0.0:
        return np.full(z.shape, sps.rgamma(beta), dtype=np.complex128)
    guard = azmax ** (1.0 / alpha) * LOG10E
    kmax = _series_kstop(alpha, beta, azmax, guard + 19.0)
    rg = _float_rgamma_table(alpha, beta, kmax)
    s = np.full(z.shape, rg[0], dtype=np.complex128)
    zp = np.ones_like(z)
    quiet = 0
    for k in range(1, kmax + 1):
        zp = zp * z
        term = zp * rg[k]
        s += term
        floor = rel_tol * 1e-2 * np.maximum(np.abs(s), 1e-290)
        if np.all(np.abs(term) <= floor):
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
    return s


# ---------------------------------------------------------------------------
# asymptotic expansion


def _algebraic_coeffs(alpha: float, beta: float, nmax: int) -> np.ndarray:
    """1/Gamma(beta - alpha*k) for k = 1..nmax, with float-fuzzy Gamma poles
    snapped to exact zeros so truncation logic can skip them."""
    x = beta - alpha * np.arange(1, nmax + 1)
    coeffs = sps.rgamma(x)
    fuzzy_pole = (x < 0.5) & (np.abs(x - np.rint(x)) < 1e-9)
    return np.where(fuzzy_pole, 0.0, coeffs)


def _asymptotic_many(
    alpha: float,
    beta: float,
    z: np.ndarray,
    n_terms: int | None,
) -> tuple[np.ndarray, np.ndarray]:
    """N-term expansion and a per-point relative error self-estimate.

    Exponential part: branches zeta_n = z^(1/alpha) rotated by 2*pi*n/alpha
    for n in {-1, 0, 1}, included while -pi*alpha < arg(z) + 2*pi*n <= pi*alpha
    (for alpha = 2 this reproduces the two-exponential formula).  Algebraic
    part: -sum_k z^(-k)/Gamma(beta - alpha*k), truncated per point where the
    nonzero terms are smallest when n_terms is None.
    """
    nmax = 32 if n_terms is None else n_terms
    theta = np.angle(z)
    az = np.abs(z)
    coeffs = _algebraic_coeffs(alpha, beta, nmax + 9)

    w = 1.0 / z
    wp = np.ones_like(z)
    rows = []  # (index into mags, term row) for nonzero coefficients
    for k in range(1, nmax + 1):
        wp = wp * w
        c = coeffs[k - 1]
        if c == 0.0:
            continue
        rows.append(wp * c)
    next_c = 0.0
    for j in range(nmax, nmax + 8):
        if coeffs[j] != 0.0:
            next_c = abs(coeffs[j])
            break
    tail_next = np.abs(w) ** (nmax + 1) * next_c

    if not rows:
        # every algebraic coefficient sits on a Gamma pole; expansion is exponential-only
        algebraic = np.zeros_like(z)
        alg_err = tail_next
    elif n_terms is not None:
        algebraic = -np.add.reduce(rows)
        alg_err = tail_next
    else:
        # truncate each point at its globally smallest term; the error is the
        # first omitted term (or the tail beyond the table)
        terms = np.stack(rows)
        mags = np.abs(terms)
        cums = np.cumsum(terms, axis=0)
        kidx = np.argmin(mags, axis=0)
        algebraic = -np.take_along_axis(cums, kidx[None, ...], axis=0)[0]
        nrows = terms.shape[0]
        omitted = np.where(
            kidx + 1 < nrows,
            np.take_along_axis(mags, np.minimum(kidx + 1, nrows - 1)[None, ...], axis=0)[0],
            tail_next,
        )
        alg_err = 10.0 * omitted

    inv_alpha = 1.0 / alpha
    root = az**inv_alpha
    expo = np.zeros_like(z)
    included_args: list[np.ndarray] = []
    include_masks: list[np.ndarray] = []
    for n in (-1, 0, 1):
        theta_n = theta + 2.0 * math.pi * n
        inc = (theta_n > -math.pi * alpha) & (theta_n <= math.pi * alpha)
        include_masks.append(inc)
        included_args.append(theta_n / alpha)
        if not inc.any():
            continue
        phi = theta_n / alpha
        zeta = root * np.exp(1j * phi)
        with np.errstate(over="ignore", invalid="ignore"):
            term = (1.0 / alpha) * np.exp((1.0 - beta) * np.log(zeta.astype(complex)) + zeta)
        expo = expo + np.where(inc, term, 0.0)

    # dropped-branch magnitudes: formal Re(zeta_n) for excluded neighbours
    stokes = np.zeros(z.shape)
    pref = np.maximum(root ** ((1.0 - beta) / 1.0), 1.0) / alpha  # |zeta|^(1-beta), floored
    for i, n in enumerate((-1, 0, 1)):
        inc = include_masks[i]
        phi = included_args[i]
        near = (~inc) & (np.abs(phi) < 1.45 * math.pi)
        if not near.any():
            continue
        dup = np.zeros(z.shape, dtype=bool)
        for j in range(3):
            if i == j:
                continue
            same = np.abs(np.exp(1j * (phi - included_args[j])) - 1.0) < 1e-9
            dup |= include_masks[j] & same
        near &= ~dup
        if near.any():
            re_part = root * np.cos(phi)
            with np.errstate(over="ignore"):
                stokes = np.where(near, stokes + np.exp(np.minimum(re_part, 700.0)) * pref, stokes)

    value = expo + algebraic
    scale = np.maximum(np.abs(value), 1e-290)
    est = (alg_err + stokes) / scale
    return value, est


# ---------------------------------------------------------------------------
# arbitrary-precision series (oracle machinery)


class _SeriesTable:
    """Reciprocal-gamma table 1/Gamma(alpha*k+beta) at a fixed mpmath precision.

    For rational alpha = p/q the residue classes k mod q advance Gamma by the
    integer p, so each entry costs p multiplications instead of a gamma call.
    """

    def __init__(self, alpha: float, beta: float, dps: int):
        self.alpha = alpha
        self.beta = beta
        self.dps = dps
        frac = Fraction(alpha).limit_denominator(64)
        self.rational = abs(float(frac) - alpha) < 1e-15
        self.q = frac.denominator if self.rational else 1
        self.p = frac.numerator if self.rational else 0
        self.rg: list = []
        self._gammas: list = []  # last Gamma per residue chain (None until started)

    def extend(self, kmax: int) -> None:
        if kmax < len(self.rg):
            return
        with mp.workdps(self.dps):
            alpha_mp = mp.mpf(self.alpha)
            beta_mp = mp.mpf(self.beta)
            if not self.rational:
                for k in range(len(self.rg), kmax + 1):
                    self.rg.append(mp.rgamma(alpha_mp * k + beta_mp))
                return
            while len(self._gammas) < self.q:
                self._gammas.append(None)
            for k in range(len(self.rg), kmax + 1):
                r = k % self.q
                x = alpha_mp * k + beta_mp
                g_prev = self._gammas[r]
                if g_prev is None:
                    if x <= mp.mpf("0.5"):
                        self.rg.append(mp.rgamma(x))
                        continue
                    g = mp.gamma(x)
                else:
                    f = mp.mpf(1)
                    base = x - self.p
                    for j in range(self.p):
                        f *= base + j
                    g = g_prev * f
                self._gammas[r] = g
                self.rg.append(1 / g)


_MP_TABLE_CACHE: dict[tuple[float, float], _SeriesTable] = {}


def _series_table(alpha: float, beta: float, dps: int) -> _SeriesTable:
    key = (alpha, beta)
    tab = _MP_TABLE_CACHE.get(key)
    if tab is None or tab.dps < dps:
        tab = _SeriesTable(alpha, beta, dps)
        _MP_TABLE_CACHE[key] = tab
    return tab


def series_term_count(alpha: float, az: float, digits: int = 50) -> int:
    """Estimated series length: terms until the tail has dropped below the
    cancellation-guarded target precision."""
    if az == 0:
        return 1
    guard = az ** (1.0 / alpha) * LOG10E
    return _series_kstop(alpha, 1.0, az, digits + guard + 16.0)


def _mp_series_value(
    alpha: float,
    beta: float,
    z: complex,
    digits: int,
    *,
    dps_cap: int = 4000,
    terms_cap: int = 120_000,
):
    """Sum the defining series so the result carries ``digits`` good digits.

    Returns an mpf/mpc pair (value, achieved working precision).  Raises
    PrecisionExhausted when the cancellation guard would exceed ``dps_cap``
    or the series needs more than ``terms_cap`` terms.
    """
    az = abs(z)
    if az == 0:
        with mp.workdps(digits + 10):
            return mp.rgamma(beta), digits + 10
    guard = int(az ** (1.0 / alpha) * LOG10E) + 10
    dps = digits + guard
    for _ in range(8):
        if dps > dps_cap:
            raise PrecisionExhausted(
                f"needs {dps} digits at alpha={alpha}, |z|={az:.3g} (cap {dps_cap})"
            )
        kstop = _series_kstop(alpha, beta, az, dps + 6.0)
        if kstop > terms_cap:
            raise PrecisionExhausted(
                f"series needs ~{kstop} terms at alpha={alpha}, |z|={az:.3g} (cap {terms_cap})"
            )
        table = _series_table(alpha, beta, dps)
        table.extend(min(kstop, 4096))
        rg = table.rg
        finished = False
        with mp.workdps(dps):
            zz = mp.mpc(z)
            s = mp.mpc(rg[0])
            zp = mp.mpc(1)
            maxterm = abs(s)
            half = mp.mpf("0.5")
            noise_floor = mp.mpf(10) ** (-(dps - 3))
            k = 0
            while k < kstop:
                k += 1
                if k + 1 >= len(rg):
                    table.extend(min(k + 512, kstop + 2))
                    rg = table.rg
                zp *= zz
                term = zp * rg[k]
                s += term
                a = abs(term)
                if a > maxterm:
                    maxterm = a
                # geometric tail: ratio <= 1/2 and below working noise
                x_k = alpha * k + beta
                if x_k > 1.0 and a <= noise_floor * maxterm:
                    nxt = abs(zp * zz * rg[k + 1])
                    if nxt <= half * a or nxt <= noise_floor * maxterm:
                        finished = True
                        break
            if not finished:
                raise PrecisionExhausted(
                    f"series tail did not close by k={kstop} at z={z!r}"
                )
            # certification: result must sit above the accumulated rounding noise
            noise = maxterm * mp.mpf(k) * mp.mpf(10) ** (-(dps - 6))
            if abs(s) > noise * mp.mpf(10) ** digits:
                return s, dps
            observed = max(abs(s), noise)
            deficit = int(mp.log10(maxterm / observed)) + digits + 12
        dps = max(dps + 60, digits + deficit)
    raise PrecisionExhausted(f"certification loop did not converge at z={z!r}")


def ml_eval_oracle(params: MLParams, z: complex, digits: int = 50, *,
                   dps_cap: int = 4000, terms_cap: int = 120_000) -> complex:
    """Arbitrary-precision reference value, rounded to a complex float."""
    if digits < 50:
        raise ValueError("oracle requires digits >= 50")
    if abs(z) > 1e3:
        raise ValueError("oracle domain is |z| <= 1e3")
    val, _ = _mp_series_value(params.alpha, params.beta, complex(z), digits,
                              dps_cap=dps_cap, terms_cap=terms_cap)
    return complex(val)


def ml_eval_oracle_str(params: MLParams, z: complex, digits: int = 50) -> tuple[str, str]:
    """Reference value as decimal strings (re, im) with ``digits`` digits."""
    val, dps = _mp_series_value(params.alpha, params.beta, complex(z), digits)
    with mp.workdps(digits + 5):
        return mp.nstr(mp.re(val), digits), mp.nstr(mp.im(val), digits)


# ---------------------------------------------------------------------------
# the production evaluator


def _needed_digits(rel_tol: float) -> int:
    return int(math.ceil(-math.log10(rel_tol))) + 2


_EVAL_BLOCK = 65536


def _eval_block(
    params: MLParams,
    flat: np.ndarray,
    rel_tol: float,
    r0: float,
    r1: float,
    mp_dps_cap: int,
    mp_terms_cap: int,
) -> np.ndarray:
    alpha, beta = params.alpha, params.beta
    out = np.empty(flat.shape, dtype=np.complex128)
    az = np.abs(flat)
    done = np.zeros(flat.shape, dtype=bool)

    t_rad = taylor_radius(alpha, rel_tol, r0)
    small = az <= t_rad
    if small.any():
        out[small] = _taylor_many(alpha, beta, flat[small], rel_tol)
        done |= small

    big = (~done) & (az > 0)
    if big.any():
        vals, est = _asymptotic_many(alpha, beta, flat[big], None)
        # the expansion is used wherever its self-estimate certifies the
        # tolerance (from r1 outward it is the default regime); elsewhere it
        # yields to the arbitrary-precision path
        ok = est <= rel_tol
        idx = np.flatnonzero(big)
        accept = idx[ok]
        out[accept] = vals[ok]
        done[accept] = True

    rest = np.flatnonzero(~done)
    if rest.size:
        digits = _needed_digits(rel_tol)
        for i in rest:
            zi = complex(flat[i])
            if abs(zi) == 0.0:
                out[i] = sps.rgamma(beta)
                continue
            if series_term_count(alpha, abs(zi), digits) > mp_terms_cap:
                raise ToleranceUnreachable(
                    f"no regime certifies rel_tol={rel_tol:g} at z={zi!r} "
                    f"(alpha={alpha}, asymptotic self-estimate too large, series infeasible)"
                )
            val, _ = _mp_series_value(alpha, beta, zi, digits,
                                      dps_cap=mp_dps_cap, terms_cap=mp_terms_cap)
            out[i] = complex(val)

    bad = ~np.isfinite(out)
    if bad.any():
        i = int(np.flatnonzero(bad)[0])
        raise NonFinite(complex(flat[i]), "asymptotic" if az[i] > t_rad else "series")
    return out


def ml_eval_many(
    params: MLParams,
    z,
    rel_tol: float = 1e-10,
    *,
    r0: float = 5.0,
    r1: float = 40.0,
    use_closed_forms: bool = True,
    mp_dps_cap: int = 4000,
    mp_terms_cap: int = 120_000,
) -> np.ndarray:
    """Vectorised E_{alpha,beta} over an array of complex arguments."""
    if not (1e-14 <= rel_tol <= 1e-4):
        raise ValueError("rel_tol must lie in [1e-14, 1e-4]")
    alpha, beta = params.alpha, params.beta
    z = np.asarray(z, dtype=np.complex128)
    flat = z.ravel()

    if use_closed_forms:
        closed = _closed_form_many(alpha, beta, flat)
        if closed is not None:
            bad = ~np.isfinite(closed)
            if bad.any():
                raise NonFinite(flat[bad][0], "closed-form")
            return closed.reshape(z.shape)

    out = np.empty(flat.shape, dtype=np.complex128)
    for start in range(0, flat.size, _EVAL_BLOCK):
        stop = min(start + _EVAL_BLOCK, flat.size)
        out[start:stop] = _eval_block(
            params, flat[start:stop], rel_tol, r0, r1, mp_dps_cap, mp_terms_cap
        )
    return out.reshape(z.shape)


def ml_eval(params: MLParams, z: complex, rel_tol: float = 1e-10, **kwargs) -> complex:
    """E_{alpha,beta}(z) with relative accuracy rel_tol (scalar form)."""
    return complex(ml_eval_many(params, np.array([z]), rel_tol, **kwargs)[0])


def ml_eval_asymptotic(params: MLParams, z: complex, n_terms: int, *, r1: float = 40.0) -> complex:
    """N-term large-|z| expansion; OutsideValidity below the switch radius."""
    if not (1 <= n_terms <= 20):
        raise ValueError("n_terms must lie in [1, 20]")
    if abs(z) < r1:
        raise OutsideValidity(f"|z|={abs(z):.3g} below switch radius {r1}")
    if abs(params.alpha - 2.0) <= _EQ_TOL:
        return _alpha2_expansion(params.beta, complex(z), n_terms)
    val, _ = _asymptotic_many(params.alpha, params.beta, np.array([z], dtype=complex), n_terms)
    v = complex(val[0])
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise NonFinite(z, "asymptotic")
    return v


def _alpha2_expansion(beta: float, z: complex, n_terms: int) -> complex:
    """alpha = 2: (1/2) z^((1-beta)/2) (e^sqrt(z) + e^(-sqrt(z)-pi*i*(1-beta)*sign(arg z)))
    minus the algebraic tail."""
    s = np.sign(np.angle(z))
    w = np.sqrt(complex(z))
    pref = 0.5 * complex(z) ** ((1.0 - beta) / 2.0)
    expo = pref * (np.exp(w) + np.exp(-w - 1j * math.pi * (1.0 - beta) * s))
    k = np.arange(1, n_terms + 1)
    alg = np.sum(complex(z) ** (-k) * sps.rgamma(beta - 2.0 * k))
    v = complex(expo - alg)
    if not (math.isfinite(v.real) and math.isfinite(v.imag)):
        raise NonFinite(z, "asymptotic-alpha2")
    return v


def ml_derivative_check(params: MLParams, z: complex, h: float, *, oracle_digits: int = 40) -> float:
    """|central difference of E_{alpha,1} minus (1/alpha) E_{alpha,alpha}|.

    The difference quotient is taken with the high-precision series so the
    O(h^2) discretisation error is observable; the right-hand side uses the
    production evaluator, crossing the two paths.
    """
    if abs(params.beta - 1.0) > _EQ_TOL:
        raise ValueError("derivative identity check requires beta = 1")
    if not (1e-8 <= h <= 1e-4):
        raise ValueError("h must lie in [1e-8, 1e-4]")
    alpha = params.alpha
    plus, _ = _mp_series_value(alpha, 1.0, complex(z) + h, oracle_digits)
    minus, _ = _mp_series_value(alpha, 1.0, complex(z) - h, oracle_digits)
    with mp.workdps(oracle_digits + 10):
        diff = (plus - minus) / (2 * h)
        diff_c = complex(diff)
    rhs = ml_eval(MLParams(alpha, alpha), z, rel_tol=1e-12) / alpha
    return abs(diff_c - rhs)


# ---------------------------------------------------------------------------
# sector envelope


def sector_envelope(params: MLParams, z: complex, sb: SectorBoundParams) -> float:
    """C1 (1+|z|)^((1-beta)/alpha) exp(Re z^(1/alpha)) + C2/(1+|z|)."""
    alpha, beta = params.alpha, params.beta
    if alpha < 2.0 - _EQ_TOL:
        lo, hi = math.pi * alpha / 2.0, min(math.pi, math.pi * alpha)
        if not (lo < sb.theta_sector < hi):
            raise ValueError(
                f"theta_sector must lie in (pi*alpha/2, min(pi, pi*alpha)) = ({lo:.6g}, {hi:.6g})"
            )
    th = abs(np.angle(complex(z)))
    if th > sb.theta_sector + 1e-15:
        raise OutsideSector(f"|arg z|={th:.6g} exceeds theta_sector={sb.theta_sector:.6g}")
    azv = abs(z)
    re_root = (azv ** (1.0 / alpha)) * math.cos(np.angle(complex(z)) / alpha) if azv > 0 else 0.0
    grow = sb.c1 * (1.0 + azv) ** ((1.0 - beta) / alpha) * math.exp(min(re_root, 700.0))
    return grow + sb.c2 / (1.0 + azv)


def fit_sector_constants(
    params: MLParams,
    theta: float,
    radii,
    rel_tol: float = 1e-10,
    margin: float = 2.0,
) -> SectorBoundParams:
    """Smallest C = C1 = C2 making the envelope dominate |E| on a radial grid."""
    alpha, beta = params.alpha, params.beta
    radii = np.asarray(radii, dtype=float)
    z = radii * np.exp(1j * theta)
    vals = np.abs(ml_eval_many(params, z, rel_tol))
    re_root = radii ** (1.0 / alpha) * math.cos(theta / alpha)
    grow = (1.0 + radii) ** ((1.0 - beta) / alpha) * np.exp(np.minimum(re_root, 700.0))
    base = grow + 1.0 / (1.0 + radii)
    c = float(np.max(vals / base)) * margin
    c = max(c, 1e-12)
    return SectorBoundParams(c1=c, c2=c, theta_sector=theta)
