use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Real polynomial in one variable; `coeffs[k]` is the coefficient of `x^k`.
///
/// Exact trailing zeros are trimmed on construction; the zero polynomial is
/// the empty coefficient vector.
#[derive(Debug, Clone, PartialEq)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

impl Serialize for RealPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RealPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let coeffs = Vec::<f64>::deserialize(deserializer)?;
        RealPolynomial::new(coeffs).map_err(serde::de::Error::custom)
    }
}

impl RealPolynomial {
    pub fn new(mut coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::NonFinite("polynomial coefficients"));
        }
        while coeffs.last() == Some(&0.0) {
            coeffs.pop();
        }
        Ok(Self { coeffs })
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: f64) -> Result<Self> {
        Self::new(vec![c])
    }

    #[inline]
    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the polynomial; 0 for constants and for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> f64 {
        *self.coeffs.last().unwrap_or(&0.0)
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::ZERO, |acc, &c| acc * z + c)
    }

    /// Horner evaluation of p, p', p'' at a complex point, all three
    /// accumulated in double-double arithmetic. Near an m-fold root every
    /// plain-precision value is pure cancellation noise: the value alone
    /// would cap root accuracy at noise^(1/m), and a noise-dominated p'
    /// stalls the multiplicity-aware Newton polish once iterates are closer
    /// than about noise^(1/(m-1)).
    fn eval_derivs(&self, z: Complex64) -> (Complex64, Complex64, Complex64) {
        let zc = Cdd::from_c64(z);
        let mut p = Cdd::ZERO;
        let mut dp = Cdd::ZERO;
        let mut ddp = Cdd::ZERO;
        for &c in self.coeffs.iter().rev() {
            ddp = ddp.mul(zc).add(dp);
            dp = dp.mul(zc).add(p);
            p = p.mul(zc).add_real(c);
        }
        (p.to_c64(), dp.to_c64(), ddp.to_c64() * 2.0)
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        Self::new(coeffs).expect("derivative of finite polynomial is finite")
    }

    pub fn scale(&self, s: f64) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|k| {
                self.coeffs.get(k).copied().unwrap_or(0.0)
                    + other.coeffs.get(k).copied().unwrap_or(0.0)
            })
            .collect();
        Self::new(coeffs).expect("sum of finite polynomials is finite")
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self::new(coeffs).expect("product of finite polynomials is finite")
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![0.0; k];
        coeffs.extend_from_slice(&self.coeffs);
        Self { coeffs }
    }

    /// Cauchy bound: every root z satisfies |z| <= 1 + max_k |c_k / c_deg|.
    pub fn cauchy_root_bound(&self) -> f64 {
        if self.coeffs.len() < 2 {
            return 1.0;
        }
        let lead = self.leading().abs();
        let m = self.coeffs[..self.coeffs.len() - 1]
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs()));
        1.0 + m / lead
    }

    /// All complex roots with multiplicities, sorted by (re, im) ascending.
    ///
    /// Companion-matrix eigenvalues are refined by a multiplicity-aware Newton
    /// polish (step scaled by the estimated multiplicity, so clustered
    /// eigenvalues of an m-fold root contract onto it), then merged by
    /// single-linkage clustering with radius 1e-7 * (1 + |root|). Coefficients
    /// below 1e-14 of the largest are treated as exact zeros at both ends:
    /// at the low end they become roots at the origin, at the high end the
    /// degree drops.
    pub fn all_roots(&self) -> Result<Vec<(Complex64, usize)>> {
        if self.is_zero() {
            return Err(Error::Invalid(
                "zero polynomial has no defined root set".into(),
            ));
        }
        let scale = self.max_abs_coeff();
        let cut = 1e-14 * scale;
        let mut c = self.coeffs.clone();
        while c.len() > 1 && c.last().map(|v| v.abs() <= cut) == Some(true) {
            c.pop();
        }
        let mut zero_mult = 0usize;
        while c.len() > 1 && c[0].abs() <= cut {
            c.remove(0);
            zero_mult += 1;
        }

        let mut roots: Vec<(Complex64, usize)> = Vec::new();
        if zero_mult > 0 {
            roots.push((Complex64::ZERO, zero_mult));
        }
        if c.len() > 1 {
            let reduced = Self { coeffs: c };
            let raw = reduced.aberth_roots()?;
            let deg = reduced.degree();
            let polished: Vec<Complex64> =
                raw.into_iter().map(|z| reduced.polish(z, deg)).collect();
            if polished.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                return Err(Error::Numerical {
                    context: "root finding produced non-finite values".into(),
                    residual: f64::NAN,
                });
            }
            roots.extend(cluster_roots(&polished));
        }
        roots.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
        Ok(roots)
    }

    /// Aberth-Ehrlich simultaneous iteration for all complex roots. Starts
    /// on a staggered circle inside the Cauchy bound; converges cubically to
    /// simple roots and linearly into multiple-root clusters, which the
    /// multiplicity-aware polish then tightens.
    fn aberth_roots(&self) -> Result<Vec<Complex64>> {
        let deg = self.degree();
        let lead = self.leading();
        if deg == 1 {
            return Ok(vec![Complex64::new(-self.coeffs[0] / lead, 0.0)]);
        }
        let radius = self.cauchy_root_bound().min(1e100);
        let mut z: Vec<Complex64> = (0..deg)
            .map(|k| {
                // staggered angles avoid symmetric stalls; radii spiral
                // inward so no start coincides with another
                let angle = std::f64::consts::TAU * k as f64 / deg as f64 + 0.4;
                let r = radius * (0.35 + 0.6 * (k as f64 + 1.0) / deg as f64);
                Complex64::from_polar(r, angle)
            })
            .collect();

        for _ in 0..240 {
            let mut worst = 0.0_f64;
            for k in 0..deg {
                let zk = z[k];
                let (p, dp, _) = self.eval_derivs(zk);
                if !p.re.is_finite() || !p.im.is_finite() {
                    // overflow at an aggressive start: pull toward the origin
                    z[k] = zk * 0.5;
                    worst = f64::INFINITY;
                    continue;
                }
                if p == Complex64::ZERO {
                    continue;
                }
                let newton = if dp == Complex64::ZERO {
                    Complex64::new(1e-12 * (1.0 + zk.norm()), 0.0)
                } else {
                    p / dp
                };
                let mut repulsion = Complex64::ZERO;
                for (j, &zj) in z.iter().enumerate() {
                    if j != k {
                        let d = zk - zj;
                        if d != Complex64::ZERO {
                            repulsion += d.inv();
                        }
                    }
                }
                let denom = Complex64::ONE - newton * repulsion;
                let step = if denom.norm() < 1e-12 {
                    newton
                } else {
                    newton / denom
                };
                if !step.re.is_finite() || !step.im.is_finite() {
                    z[k] = zk * 0.5;
                    worst = f64::INFINITY;
                    continue;
                }
                z[k] = zk - step;
                worst = worst.max(step.norm() / (1.0 + z[k].norm()));
            }
            if worst <= 1e-14 {
                break;
            }
        }
        Ok(z)
    }

    /// Modified Newton iteration z -= m * p/p' with the multiplicity estimate
    /// m = round(1 / (1 - p p'' / p'^2)) clamped to [1, deg].
    /// Upper bound on the rounding noise of the compensated Horner
    /// evaluation of `p` at `z` (scales with `sum_k |c_k| |z|^k`).
    fn eval_noise_floor(&self, z: Complex64) -> f64 {
        let r = z.norm();
        let mut s = 0.0_f64;
        for &c in self.coeffs.iter().rev() {
            s = s * r + c.abs();
        }
        4e-32 * self.coeffs.len() as f64 * s.max(f64::MIN_POSITIVE)
    }

    fn polish(&self, start: Complex64, deg: usize) -> Complex64 {
        let mut z = start;
        let mut best = start;
        let mut best_res = f64::INFINITY;
        for it in 0..=8 {
            let (p, dp, ddp) = self.eval_derivs(z);
            let res = p.norm();
            if res < best_res {
                best_res = res;
                best = z;
            }
            // Once the residual sinks to the evaluation noise floor, p and
            // dp are rounding noise; a further Newton step would only kick
            // the iterate back off the root.
            if it == 8 || res <= self.eval_noise_floor(z) {
                break;
            }
            let dp2 = dp * dp;
            if dp2.norm() < 1e-300 {
                break;
            }
            let denom = Complex64::new(1.0, 0.0) - p * ddp / dp2;
            let m = if denom.norm() < 1e-6 {
                deg as f64
            } else {
                (1.0 / denom).re.round().clamp(1.0, deg as f64)
            };
            let step = p / dp * m;
            let next = z - step;
            if !next.re.is_finite() || !next.im.is_finite() {
                break;
            }
            z = next;
            if step.norm() <= 1e-15 * (1.0 + z.norm()) {
                break;
            }
        }
        best
    }
}

/// Double-double scalar (value = hi + lo, |lo| <= ulp(hi)/2).
#[derive(Debug, Clone, Copy)]
struct Dd {
    hi: f64,
    lo: f64,
}

impl Dd {
    const ZERO: Dd = Dd { hi: 0.0, lo: 0.0 };

    fn from_f64(v: f64) -> Dd {
        Dd { hi: v, lo: 0.0 }
    }

    fn two_sum(a: f64, b: f64) -> Dd {
        let s = a + b;
        let bb = s - a;
        let e = (a - (s - bb)) + (b - bb);
        Dd { hi: s, lo: e }
    }

    fn two_prod(a: f64, b: f64) -> Dd {
        let p = a * b;
        Dd {
            hi: p,
            lo: a.mul_add(b, -p),
        }
    }

    fn add(self, other: Dd) -> Dd {
        let s = Dd::two_sum(self.hi, other.hi);
        let lo = s.lo + self.lo + other.lo;
        let r = Dd::two_sum(s.hi, lo);
        Dd { hi: r.hi, lo: r.lo }
    }

    fn mul(self, other: Dd) -> Dd {
        let p = Dd::two_prod(self.hi, other.hi);
        let lo = p.lo + self.hi * other.lo + self.lo * other.hi;
        let r = Dd::two_sum(p.hi, lo);
        Dd { hi: r.hi, lo: r.lo }
    }

    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

/// Complex number with double-double real and imaginary parts.
#[derive(Debug, Clone, Copy)]
struct Cdd {
    re: Dd,
    im: Dd,
}

impl Cdd {
    const ZERO: Cdd = Cdd {
        re: Dd::ZERO,
        im: Dd::ZERO,
    };

    fn from_c64(z: Complex64) -> Cdd {
        Cdd {
            re: Dd::from_f64(z.re),
            im: Dd::from_f64(z.im),
        }
    }

    fn to_c64(self) -> Complex64 {
        Complex64::new(self.re.hi + self.re.lo, self.im.hi + self.im.lo)
    }

    fn mul(self, other: Cdd) -> Cdd {
        Cdd {
            re: self.re.mul(other.re).add(self.im.mul(other.im).neg()),
            im: self.re.mul(other.im).add(self.im.mul(other.re)),
        }
    }

    fn add_real(self, c: f64) -> Cdd {
        Cdd {
            re: self.re.add(Dd::from_f64(c)),
            im: self.im,
        }
    }

    fn add(self, other: Cdd) -> Cdd {
        Cdd {
            re: self.re.add(other.re),
            im: self.im.add(other.im),
        }
    }
}

const CLUSTER_RADIUS_REL: f64 = 1e-7;

fn cluster_radius(z: Complex64) -> f64 {
    CLUSTER_RADIUS_REL * (1.0 + z.norm())
}

/// Single-linkage clustering of polished roots; each cluster becomes its
/// centroid with multiplicity = cluster size. Centroids whose imaginary part
/// lies within the cluster radius are snapped onto the real axis.
fn cluster_roots(points: &[Complex64]) -> Vec<(Complex64, usize)> {
    let n = points.len();
    let mut assigned = vec![false; n];
    let mut clusters = Vec::new();
    for i in 0..n {
        if assigned[i] {
            continue;
        }
        let mut members = vec![i];
        assigned[i] = true;
        let mut cursor = 0;
        while cursor < members.len() {
            let a = points[members[cursor]];
            for (j, done) in assigned.iter_mut().enumerate() {
                if !*done {
                    let b = points[j];
                    if (a - b).norm() <= cluster_radius(a).max(cluster_radius(b)) {
                        *done = true;
                        members.push(j);
                    }
                }
            }
            cursor += 1;
        }
        let mut centroid = Complex64::ZERO;
        for &k in &members {
            centroid += points[k];
        }
        centroid /= members.len() as f64;
        if centroid.im.abs() <= cluster_radius(centroid) {
            centroid.im = 0.0;
        }
        clusters.push((centroid, members.len()));
    }
    clusters
}

/// All real roots with multiplicities, sorted ascending.
pub fn real_roots(p: &RealPolynomial) -> Result<Vec<(f64, usize)>> {
    Ok(p.all_roots()?
        .into_iter()
        .filter(|(z, _)| z.im == 0.0)
        .map(|(z, m)| (z.re, m))
        .collect())
}

/// True iff p(x) >= 0 for all x >= 0, decided by root analysis:
/// positive leading coefficient (or nonnegative constant), p(0) >= 0, and
/// every strictly positive real root of even multiplicity. The zero
/// polynomial counts as nonnegative by convention.
pub fn nonneg_on_halfline(p: &RealPolynomial) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    if p.degree() == 0 {
        return Ok(p.coeffs()[0] >= 0.0);
    }
    if p.leading() <= 0.0 {
        return Ok(false);
    }
    // Scale-aware slack: expanded squares carry rounding noise in p(0).
    let slack = 1e-12 * p.max_abs_coeff().max(1.0);
    if p.eval(0.0) < -slack {
        return Ok(false);
    }
    for (r, mult) in real_roots(p)? {
        if r > CLUSTER_RADIUS_REL && mult % 2 == 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Convolution of complex coefficient vectors (used when expanding products
/// of complex linear factors).
pub fn complex_poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Complex64::ZERO; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
