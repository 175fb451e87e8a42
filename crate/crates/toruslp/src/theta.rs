//! One-dimensional theta functions and their Chebyshev-variable derivatives.
//!
//! Everything downstream reduces to the periodic Gaussian
//!
//! ```text
//! theta(c; x) = sum_k e^{-pi k^2 c} e^{2 pi i k x}
//!             = 1 + 2 sum_{k>=1} e^{-pi k^2 c} cos(2 pi k x)
//! ```
//!
//! and its Chebyshev-variable form `theta~(c; t) = theta(c; arccos(t)/(2pi))`,
//! whose t-derivatives up to order four drive both the certificate
//! construction and the convexity checks. Two complementary summation forms
//! cover the parameter range:
//!
//! * the Fourier q-series above, which needs a handful of terms and no
//!   cancellation once c >= 1, and
//! * the image form `theta(c; x) = c^{-1/2} sum_k e^{-pi (k+x)^2 / c}`, a sum
//!   of positive Gaussians that stays perfectly conditioned as c -> 0,
//!   exactly where the q-series cancels catastrophically.
//!
//! Derivatives in t pick up 1/sin(u) factors from the angular substitution
//! t = cos u; at t = +-1 the limits are exact rational combinations of even
//! u-derivatives, which the image engine supplies directly. All internal
//! arithmetic runs on [`Xf`], so values like theta~(6e-4; -1) ~ 1e-541 keep
//! full relative precision; the f64-facing wrappers convert (and saturate) at
//! the boundary.

use crate::xf::Xf;
use std::f64::consts::PI;
use thiserror::Error;

/// Fourier/image switchover for the plain theta value: q-series in f64 needs
/// c at or above this; below, the q-series is summed in wide precision.
const SWITCH_C: f64 = 1.0;
/// Derivative-engine switchover. The Chebyshev series cancels like
/// e^{pi/(4c)} as c -> 0; the image-engine reconstructions cancel like
/// theta~'/theta~'''' ~ e^{12 pi c} as c grows. Both conditions stay below
/// ~1e3 on their own side of this point, so each engine runs only where it
/// holds 12+ digits.
const IMAGE_MAX_C: f64 = 0.1;
/// Adaptive truncation target: stop once the next term's envelope drops below
/// this fraction of the running value.
const TRUNC_REL: f64 = 1e-18;
/// Reported truncation bounds are the first omitted envelope times this.
const TRUNC_SAFETY: f64 = 10.0;
/// Inside this distance of t = +-1 the angular solve loses too many digits to
/// its sin(u)^-4 factors; prefer the Chebyshev series there whenever its own
/// cancellation allows.
const ENDPOINT_WINDOW: f64 = 1e-6;
const WINDOW_CHEB_MIN_C: f64 = 0.05;
/// Hard cap on series length; tripping it means the parameter validation was
/// bypassed, not that the series is slow.
const K_CAP: usize = 10_000;
/// Exponent arguments below this are flushed to an exact zero term instead of
/// being fed to Xf::exp (they are beyond any meaningful magnitude anyway).
const ARG_FLOOR: f64 = -1.0e14;

#[derive(Debug, Error)]
pub enum ThetaError {
    #[error("theta parameter must satisfy 1e-18 <= c <= 1e18, got c = {0}")]
    BadParam(f64),
    #[error("Chebyshev variable must lie in [-1, 1], got t = {0}")]
    BadT(f64),
    #[error("derivative order must be at most 4, got {0}")]
    BadOrder(usize),
    #[error("theta series did not converge within 10000 terms at c = {0}")]
    NonConvergence(f64),
}

/// A validated theta parameter c > 0.
///
/// The window [1e-18, 1e18] is far wider than anything the certificates use
/// (they stay within roughly [6e-4, 2e3]); the bounds only keep internal
/// exponents comfortably inside f64/i64 range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaParam {
    c: f64,
}

impl ThetaParam {
    pub fn new(c: f64) -> Result<Self, ThetaError> {
        if !c.is_finite() || !(1e-18..=1e18).contains(&c) {
            return Err(ThetaError::BadParam(c));
        }
        Ok(ThetaParam { c })
    }

    pub fn c(self) -> f64 {
        self.c
    }

    /// theta(c; x) summed as the Fourier q-series.
    ///
    /// For c >= 1 a few f64 terms give full precision. Below that the series
    /// still converges but cancels (condition ~ e^{pi/(4c)} near x = 1/2), so
    /// the summation runs in wide-precision arithmetic before rounding to
    /// f64; c below ~3e-5 would need more than the capped number of terms and
    /// reports [`ThetaError::NonConvergence`].
    pub fn fourier(self, x: f64) -> Result<f64, ThetaError> {
        assert!(x.is_finite());
        if self.c >= SWITCH_C {
            let q = (-PI * self.c).exp();
            let q2 = q * q;
            let mut qk = q; // q^{k^2}
            let mut qodd = q * q2; // q^{2k+1}
            let mut sum = 1.0;
            for k in 1..=K_CAP {
                sum += 2.0 * qk * (2.0 * PI * k as f64 * x).cos();
                if qk < TRUNC_REL {
                    return Ok(sum);
                }
                qk *= qodd;
                qodd *= q2;
            }
            unreachable!("q-series at c >= 1 converges in a handful of terms");
        }
        bigref::theta_fourier_f64(self.c, x)
    }

    /// theta(c; x) summed over Gaussian images, c^{-1/2} sum e^{-pi(k+x)^2/c}.
    ///
    /// All terms are positive, so this form is well conditioned at every c;
    /// it is the reference the Fourier path is tested against. Values below
    /// f64 range round to zero.
    pub fn gauss(self, x: f64) -> Result<f64, ThetaError> {
        assert!(x.is_finite());
        let (th, _) = gauss_engine(self.c, x, 0)?;
        Ok(th[0].to_f64())
    }

    /// theta~(c; t) with derivatives d/dt^m for m = 0..=order (order <= 4).
    pub fn tilde(self, t: f64, order: usize) -> Result<ThetaEval, ThetaError> {
        let (d, trunc_bound) = self.tilde_xf(t, order)?;
        Ok(ThetaEval {
            derivs: d[..=order].iter().map(|v| v.to_f64()).collect(),
            trunc_bound,
        })
    }

    /// (d/dt) log theta~(c; t): the ratio theta~'/theta~.
    ///
    /// Computed as a ratio of extended-range values, so it stays accurate
    /// even where numerator and denominator themselves underflow f64.
    pub fn log_deriv(self, t: f64) -> Result<f64, ThetaError> {
        let (d, _) = self.tilde_xf(t, 1)?;
        Ok(d[1].div(d[0]).to_f64())
    }

    /// Extended-range theta~ derivatives; the engine behind both the public
    /// wrappers and the certificate pipeline.
    pub(crate) fn tilde_xf(self, t: f64, order: usize) -> Result<([Xf; 5], f64), ThetaError> {
        if order > 4 {
            return Err(ThetaError::BadOrder(order));
        }
        // Tolerate end-of-range roundoff in callers, nothing more.
        if !t.is_finite() || t.abs() > 1.0 + 1e-9 {
            return Err(ThetaError::BadT(t));
        }
        let t = t.clamp(-1.0, 1.0);

        if self.c >= SWITCH_C {
            return cheb_engine(self.c, t, order);
        }
        if t == 1.0 || t == -1.0 {
            let x = if t == 1.0 { 0.0 } else { 0.5 };
            let (th, trunc) = gauss_engine(self.c, x, 2 * order)?;
            return Ok((endpoint_tilde(&th, t, order), trunc));
        }
        if t.abs() > 1.0 - ENDPOINT_WINDOW {
            return cheb_engine(self.c, t, order);
        }
        let u = t.acos();
        let (th, trunc) = gauss_engine(self.c, u / (2.0 * PI), order)?;
        Ok((interior_tilde(&th, t, u, order), trunc))
    }
}

/// theta~ value and t-derivatives from [`ThetaParam::tilde`].
#[derive(Clone, Debug)]
pub struct ThetaEval {
    /// derivs[m] = (d/dt)^m theta~(c; t), for m = 0..=order.
    pub derivs: Vec<f64>,
    /// Ten times the first omitted series term: a conservative bound on the
    /// truncation error of the underlying sum (not of f64 rounding).
    pub trunc_bound: f64,
}

impl ThetaEval {
    pub fn value(&self) -> f64 {
        self.derivs[0]
    }
}

pub fn theta_fourier(c: f64, x: f64) -> Result<f64, ThetaError> {
    ThetaParam::new(c)?.fourier(x)
}

pub fn theta_gauss(c: f64, x: f64) -> Result<f64, ThetaError> {
    ThetaParam::new(c)?.gauss(x)
}

pub fn theta_tilde(c: f64, t: f64, order: usize) -> Result<ThetaEval, ThetaError> {
    ThetaParam::new(c)?.tilde(t, order)
}

pub fn log_deriv_tilde(c: f64, t: f64) -> Result<f64, ThetaError> {
    ThetaParam::new(c)?.log_deriv(t)
}

/// Chebyshev form of the q-series: theta~ and t-derivatives via
/// `theta~^(m) = 2 sum_k e^{-pi k^2 c} T_k^(m)(t)`, with the T-derivative
/// rows advanced by the coupled recurrence
/// `T^(m)_{k+1} = 2t T^(m)_k + 2m T^(m-1)_k - T^(m)_{k-1}`.
///
/// Exact for any c, but the terms alternate for t < 0, so for c well below 1
/// this form loses digits (the engine dispatch only routes the near-endpoint
/// window here in that regime).
fn cheb_engine(c: f64, t: f64, order: usize) -> Result<([Xf; 5], f64), ThetaError> {
    let mut sums = [Xf::ZERO; 5];
    sums[0] = Xf::ONE;
    // Rows T^(m)_{k-1} and T^(m)_k for m = 0..=4; k starts at 1.
    let mut prev = [1.0, 0.0, 0.0, 0.0, 0.0];
    let mut curr = [t, 1.0, 0.0, 0.0, 0.0];
    let mut qk = Xf::exp((-PI * c).max(ARG_FLOOR)); // e^{-pi k^2 c}
    for k in 1..=K_CAP {
        for m in 0..=order {
            sums[m] = sums[m].add(qk.mul_f64(2.0 * curr[m]));
        }
        // Envelope of the next term at each order: |T^(m)_{k+1}| <= (k+1)^{2m}.
        // Every order must be converged relative to its own sum — the value
        // series settles long before the order-m series has even reached its
        // leading term at k = m.
        let arg = -PI * c * ((k + 1) * (k + 1)) as f64;
        let next_qk = if arg < ARG_FLOOR { Xf::ZERO } else { Xf::exp(arg) };
        let converged = k > order
            && (0..=order).all(|m| {
                let env_m = next_qk.mul_f64(2.0 * ((k + 1) as f64).powi(2 * m as i32));
                env_m.is_zero() || env_m.abs() < sums[m].abs().mul_f64(TRUNC_REL)
            });
        if converged {
            let env = next_qk.mul_f64(2.0 * ((k + 1) as f64).powi(2 * order as i32));
            return Ok((sums, env.mul_f64(TRUNC_SAFETY).to_f64()));
        }
        let mut next = [0.0; 5];
        for m in 0..=order {
            next[m] = 2.0 * t * curr[m] - prev[m];
            if m > 0 {
                next[m] += 2.0 * m as f64 * curr[m - 1];
            }
        }
        prev = curr;
        curr = next;
        qk = next_qk;
    }
    Err(ThetaError::NonConvergence(c))
}

/// Image-sum engine: u-derivatives `Theta^(j)(u) = (2pi)^{-j} d^j/dx^j theta(c; x)`
/// for j = 0..=jmax (jmax <= 8) at x = u/(2pi), via
/// `d^j/dx^j e^{-w z^2} = p_j(z) e^{-w z^2}` with z = k + x, w = pi/c and the
/// polynomial recurrence p_{j+1} = p_j' - 2wz p_j.
///
/// Every term is a positive Gaussian times a modest polynomial, so relative
/// accuracy is uniform in c; this is the only engine trusted for c < 1.
fn gauss_engine(c: f64, x: f64, jmax: usize) -> Result<([Xf; 9], f64), ThetaError> {
    debug_assert!(jmax <= 8);
    let w = PI / c;
    // ptab[j][i]: coefficient of z^i in p_j.
    let mut ptab = [[0.0f64; 9]; 9];
    ptab[0][0] = 1.0;
    for j in 0..jmax {
        for i in 0..=j + 1 {
            let deriv = if i + 1 <= j { (i + 1) as f64 * ptab[j][i + 1] } else { 0.0 };
            let shift = if i >= 1 { -2.0 * w * ptab[j][i - 1] } else { 0.0 };
            ptab[j + 1][i] = deriv + shift;
        }
    }
    let horner = |j: usize, z: f64| -> f64 {
        let mut acc = 0.0;
        for i in (0..=j).rev() {
            acc = acc * z + ptab[j][i];
        }
        acc
    };

    let mut sums = [Xf::ZERO; 9];
    let k0 = (-x).round() as i64;
    // Interleave images outward from the nearest one: k0, k0+1, k0-1, ...
    let mut trunc = 0.0f64;
    let mut done = false;
    for step in 0..K_CAP {
        let mut progressed = false;
        for k in [k0 + step as i64, k0 - 1 - step as i64] {
            let z = k as f64 + x;
            let arg = -w * z * z;
            let weight = if arg < ARG_FLOOR { Xf::ZERO } else { Xf::exp(arg) };
            for (j, s) in sums.iter_mut().enumerate().take(jmax + 1) {
                *s = s.add(weight.mul_f64(horner(j, z)));
            }
            progressed |= !weight.is_zero();
        }
        // Envelope of the next images: both |z| grow past step + 1 - |x - round|,
        // and |p_j(z)| <= (1 + 2w(|z|+1))^jmax there.
        let zmin = (step + 1) as f64 - 1.0;
        let arg = -w * zmin * zmin;
        let env_w = if arg < ARG_FLOOR { Xf::ZERO } else { Xf::exp(arg) };
        let poly_bound = (1.0 + 2.0 * w * (zmin + 2.0)).powi(jmax as i32);
        let env = env_w.mul_f64(2.0 * poly_bound);
        if step >= 1 && (env.abs() < sums[0].abs().mul_f64(TRUNC_REL) || !progressed) {
            trunc = env.mul_f64(TRUNC_SAFETY).to_f64();
            done = true;
            break;
        }
    }
    if !done {
        return Err(ThetaError::NonConvergence(c));
    }
    // Normalize: theta = c^{-1/2} G, and each u-derivative carries (2pi)^{-j}.
    let root = Xf::from_f64(c.sqrt()).recip();
    let mut scale = root;
    for (j, s) in sums.iter_mut().enumerate().take(jmax + 1) {
        *s = s.mul(scale);
        trunc = if j == 0 { trunc * root.to_f64() } else { trunc };
        scale = scale.mul_f64(1.0 / (2.0 * PI));
    }
    Ok((sums, trunc))
}

/// theta~ derivatives at t = +-1 from even u-derivatives of Theta.
///
/// Expanding theta~(cos u) around u = 0 (t = +1, s below) or u = pi (t = -1)
/// and matching Taylor coefficients gives, with s = t:
///
/// ```text
/// theta~'   = -s Theta''
/// theta~''  = (Theta'''' - s theta~') / 3
/// theta~''' = (-s Theta^(6) - theta~' - 15 s theta~'') / 15
/// theta~'''' = (Theta^(8) - s theta~' - 63 theta~'' - 210 s theta~''') / 105
/// ```
fn endpoint_tilde(th: &[Xf; 9], s: f64, order: usize) -> [Xf; 5] {
    let mut d = [Xf::ZERO; 5];
    d[0] = th[0];
    if order >= 1 {
        d[1] = th[2].mul_f64(-s);
    }
    if order >= 2 {
        d[2] = th[4].sub(d[1].mul_f64(s)).mul_f64(1.0 / 3.0);
    }
    if order >= 3 {
        d[3] = th[6]
            .mul_f64(-s)
            .sub(d[1])
            .sub(d[2].mul_f64(15.0 * s))
            .mul_f64(1.0 / 15.0);
    }
    if order >= 4 {
        d[4] = th[8]
            .sub(d[1].mul_f64(s))
            .sub(d[2].mul_f64(63.0))
            .sub(d[3].mul_f64(210.0 * s))
            .mul_f64(1.0 / 105.0);
    }
    d
}

/// theta~ derivatives at interior t from u-derivatives of Theta, by back-
/// substituting the chain-rule triangle for t = cos u (co = t, si = sin u):
///
/// ```text
/// Theta'    = -si th1
/// Theta''   = -co th1 + si^2 th2
/// Theta'''  =  si th1 + 3 si co th2 - si^3 th3
/// Theta'''' =  co th1 + (3co^2 - 4si^2) th2 - 6 si^2 co th3 + si^4 th4
/// ```
fn interior_tilde(th: &[Xf; 9], t: f64, u: f64, order: usize) -> [Xf; 5] {
    let si = u.sin();
    let co = t;
    let mut d = [Xf::ZERO; 5];
    d[0] = th[0];
    if order >= 1 {
        d[1] = th[1].mul_f64(-1.0 / si);
    }
    if order >= 2 {
        d[2] = th[2].add(d[1].mul_f64(co)).mul_f64(1.0 / (si * si));
    }
    if order >= 3 {
        d[3] = d[1]
            .mul_f64(si)
            .add(d[2].mul_f64(3.0 * si * co))
            .sub(th[3])
            .mul_f64(1.0 / si.powi(3));
    }
    if order >= 4 {
        d[4] = th[4]
            .sub(d[1].mul_f64(co))
            .sub(d[2].mul_f64(3.0 * co * co - 4.0 * si * si))
            .add(d[3].mul_f64(6.0 * si * si * co))
            .mul_f64(1.0 / si.powi(4));
    }
    d
}

/// Wide-precision reference evaluations (astro-float), used for the c < 1
/// Fourier summation, for cross-validation in tests, and for the divided-
/// difference witnesses of complete monotonicity where f64 cannot resolve
/// the differences at all.
pub(crate) mod bigref {
    use super::{ThetaError, K_CAP, PI};
    use astro_float::{BigFloat, Consts, RoundingMode, Sign};

    const RM: RoundingMode = RoundingMode::ToEven;

    pub(crate) struct BigEval {
        p: usize,
        cc: Consts,
    }

    impl BigEval {
        pub(crate) fn new(prec_bits: usize) -> Self {
            BigEval {
                p: prec_bits,
                cc: Consts::new().expect("astro-float constants cache"),
            }
        }

        fn pi(&mut self) -> BigFloat {
            self.cc.pi(self.p, RM)
        }

        /// Fourier q-series with the cosine chain and q-power chain advanced
        /// by recurrences, so the whole sum costs one exp and one cos.
        pub(crate) fn theta_fourier(&mut self, c: f64, x: f64) -> Result<BigFloat, ThetaError> {
            let p = self.p;
            let pi_big = self.pi();
            let cb = BigFloat::from_f64(c, p);
            let xb = BigFloat::from_f64(x, p);
            let two = BigFloat::from_f64(2.0, p);
            // q = e^{-pi c}; cosine seed cos(2 pi x).
            let q = pi_big.mul(&cb, p, RM).neg().exp(p, RM, &mut self.cc);
            let c1 = two
                .mul(&pi_big, p, RM)
                .mul(&xb, p, RM)
                .cos(p, RM, &mut self.cc);
            let q2 = q.mul(&q, p, RM);
            let mut qk = q.clone(); // q^{k^2}
            let mut qodd = q.mul(&q2, p, RM); // q^{2k+1}
            let mut cos_prev = BigFloat::from_f64(1.0, p); // cos(2 pi (k-1) x)
            let mut cos_curr = c1.clone(); // cos(2 pi k x)
            let mut sum = BigFloat::from_f64(1.0, p);
            // Terms below 2^{-p-40} relative to the leading 1 cannot move the
            // result; the envelope is just q^{k^2}.
            let cutoff = -((p + 40) as f64) * std::f64::consts::LN_2;
            for k in 1..=K_CAP {
                let term = two.mul(&qk, p, RM).mul(&cos_curr, p, RM);
                sum = sum.add(&term, p, RM);
                if (-PI * c * (k * k) as f64) < cutoff {
                    return Ok(sum);
                }
                qk = qk.mul(&qodd, p, RM);
                qodd = qodd.mul(&q2, p, RM);
                let next = two.mul(&c1, p, RM).mul(&cos_curr, p, RM).sub(&cos_prev, p, RM);
                cos_prev = cos_curr;
                cos_curr = next;
            }
            Err(ThetaError::NonConvergence(c))
        }

        /// theta~ t-derivatives 0..=order by the same Chebyshev recurrences
        /// as the f64 engine, but in wide precision throughout.
        pub(crate) fn theta_tilde(
            &mut self,
            c: f64,
            t: f64,
            order: usize,
        ) -> Result<Vec<BigFloat>, ThetaError> {
            let p = self.p;
            let pi_big = self.pi();
            let q = pi_big
                .mul(&BigFloat::from_f64(c, p), p, RM)
                .neg()
                .exp(p, RM, &mut self.cc);
            let q2 = q.mul(&q, p, RM);
            let mut qk = q.clone();
            let mut qodd = q.mul(&q2, p, RM);
            let two = BigFloat::from_f64(2.0, p);
            let tb = BigFloat::from_f64(t, p);
            let mut prev: Vec<BigFloat> = (0..=order)
                .map(|m| BigFloat::from_f64(if m == 0 { 1.0 } else { 0.0 }, p))
                .collect();
            let mut curr: Vec<BigFloat> = (0..=order)
                .map(|m| BigFloat::from_f64(if m == 0 { t } else { (m == 1) as u8 as f64 }, p))
                .collect();
            let mut sums: Vec<BigFloat> = (0..=order)
                .map(|m| BigFloat::from_f64(if m == 0 { 1.0 } else { 0.0 }, p))
                .collect();
            let cutoff = -((p + 40) as f64) * std::f64::consts::LN_2;
            for k in 1..=K_CAP {
                for m in 0..=order {
                    let term = two.mul(&qk, p, RM).mul(&curr[m], p, RM);
                    sums[m] = sums[m].add(&term, p, RM);
                }
                // Envelope with the polynomial growth |T^(m)_k| <= k^8 folded in.
                if -PI * c * ((k + 1) * (k + 1)) as f64 + 8.0 * (((k + 1) as f64).ln()) < cutoff {
                    return Ok(sums);
                }
                let mut next = Vec::with_capacity(order + 1);
                for m in 0..=order {
                    let mut v = two.mul(&tb, p, RM).mul(&curr[m], p, RM).sub(&prev[m], p, RM);
                    if m > 0 {
                        let lift = BigFloat::from_f64(2.0 * m as f64, p).mul(&curr[m - 1], p, RM);
                        v = v.add(&lift, p, RM);
                    }
                    next.push(v);
                }
                prev = curr;
                curr = next;
                qk = qk.mul(&qodd, p, RM);
                qodd = qodd.mul(&q2, p, RM);
            }
            Err(ThetaError::NonConvergence(c))
        }

        /// Divided differences of theta~'/theta~ over the given ascending
        /// nodes, order columns 0..=order, returned as f64 rows.
        ///
        /// Divided differences of a function with derivatives of constant
        /// sign inherit that sign for any node set, so these are usable
        /// complete-monotonicity witnesses even where the variation sits
        /// hundreds of orders of magnitude below the values.
        pub(crate) fn log_deriv_divided_diffs(
            &mut self,
            c: f64,
            nodes: &[f64],
            order: usize,
        ) -> Result<Vec<Vec<f64>>, ThetaError> {
            let p = self.p;
            let mut col: Vec<BigFloat> = nodes
                .iter()
                .map(|&t| {
                    let d = self.theta_tilde(c, t, 1)?;
                    Ok(d[1].div(&d[0], p, RM))
                })
                .collect::<Result<_, ThetaError>>()?;
            let mut out = vec![col.iter().map(to_f64).collect::<Vec<f64>>()];
            for m in 1..=order {
                let mut next = Vec::with_capacity(col.len() - 1);
                for i in 0..col.len() - 1 {
                    let dx = BigFloat::from_f64(nodes[i + m] - nodes[i], p);
                    next.push(col[i + 1].sub(&col[i], p, RM).div(&dx, p, RM));
                }
                col = next;
                out.push(col.iter().map(to_f64).collect());
            }
            Ok(out)
        }
    }

    /// Fourier path for c < 1: sum at 192 bits, round once to f64. The
    /// cancellation this regime suffers in f64 (condition up to ~e^{pi/(4c)})
    /// is absorbed entirely by the working precision.
    pub(crate) fn theta_fourier_f64(c: f64, x: f64) -> Result<f64, ThetaError> {
        let mut ev = BigEval::new(192);
        Ok(to_f64(&ev.theta_fourier(c, x)?))
    }

    /// Round a BigFloat to the nearest f64 (astro-float has no built-in
    /// conversion in this direction): top two mantissa words give 128 bits,
    /// more than f64 can see; the exponent walk saturates to 0 / +-inf.
    pub(crate) fn to_f64(v: &BigFloat) -> f64 {
        if v.is_nan() {
            return f64::NAN;
        }
        if v.is_inf_pos() {
            return f64::INFINITY;
        }
        if v.is_inf_neg() {
            return f64::NEG_INFINITY;
        }
        if v.is_zero() {
            return 0.0;
        }
        let sign = if v.sign() == Some(Sign::Neg) { -1.0 } else { 1.0 };
        let e = v.exponent().expect("finite nonzero BigFloat") as i64;
        let words = v.mantissa_digits().expect("finite nonzero BigFloat");
        // Little-endian words; the top word has its MSB set (value = 0.m * 2^e).
        let hi = words[words.len() - 1] as f64;
        let lo = if words.len() >= 2 { words[words.len() - 2] as f64 } else { 0.0 };
        let m = hi * 2f64.powi(-64) + lo * 2f64.powi(-128);
        if e > 1024 {
            return sign * f64::INFINITY;
        }
        if e < -1073 {
            return sign * 0.0;
        }
        let h = (e / 2) as i32;
        sign * (m * 2f64.powi(h)) * 2f64.powi(e as i32 - h)
    }
}


#[cfg(test)]
mod probe {
    use super::*;

    #[test]
    fn probe_endpoint_vs_bigref() {
        let mut ev = bigref::BigEval::new(512);
        for &(c, t) in &[(0.5f64, -1.0f64), (0.5, 1.0), (0.2, -1.0)] {
            let wide = ev.theta_tilde(c, t, 4).unwrap();
            let (img, _) = ThetaParam::new(c).unwrap().tilde_xf(t, 4).unwrap();
            let (chb, _) = cheb_engine(c, t, 4).unwrap();
            for m in 0..=4 {
                let w = bigref::to_f64(&wide[m]);
                println!(
                    "c={c} t={t} m={m}: ref={w:.17e} img={:.17e} (rel {:.2e}) chb={:.17e} (rel {:.2e})",
                    img[m].to_f64(), (img[m].to_f64() - w).abs() / w.abs(),
                    chb[m].to_f64(), (chb[m].to_f64() - w).abs() / w.abs(),
                );
            }
        }
    }
}
