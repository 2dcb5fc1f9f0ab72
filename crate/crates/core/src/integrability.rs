//! First integrals, flag conditions and the periodicity diagnosis.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::germs::{condition_star, eigen_data, formal_period, StarVerdict, VectorFieldGerm};
use crate::holonomy::holonomy_generator;
use crate::scalars::{GaussianRational, TauScalar};
use crate::series::{DiffeoGerm, Multidegree, TruncatedSeries};

/// Exponents of a product of powers of irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExponentVector(pub Vec<i64>);

impl ExponentVector {
    pub fn new(entries: Vec<i64>) -> Self {
        ExponentVector(entries)
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// At least one strictly positive and one strictly negative entry.
    pub fn is_pure_meromorphic(&self) -> bool {
        self.0.iter().any(|&e| e > 0) && self.0.iter().any(|&e| e < 0)
    }

    fn combine(a: i64, p: &ExponentVector, b: i64, q: &ExponentVector) -> ExponentVector {
        ExponentVector(p.0.iter().zip(&q.0).map(|(x, y)| a * x + b * y).collect())
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|e| e.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Outcome of [`pure_meromorphic_combination`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Combination {
    /// `w = a·p + b·q` with entries of both signs.
    Pure { w: ExponentVector, a: i64, b: i64 },
    /// `p` and `q` are proportional.
    NotTransverse,
}

/// `p_i q_j = p_j q_i` for all `i, j`.
pub fn proportional(p: &ExponentVector, q: &ExponentVector) -> bool {
    let n = p.0.len();
    (0..n).all(|i| (0..n).all(|j| p.0[i] * q.0[j] == p.0[j] * q.0[i]))
}

fn floor(r: &BigRational) -> BigInt {
    r.numer().div_floor(r.denom())
}

/// Simplest fraction (least denominator, then least numerator) strictly
/// inside `(lo, hi)`, `lo ≥ 0`, `hi = None` meaning `+∞`. Follows the
/// continued-fraction expansions of the endpoints, i.e. their Euclid
/// sequences, until they part.
fn simplest_between(lo: &BigRational, hi: Option<&BigRational>) -> BigRational {
    let f = floor(lo);
    let next = BigRational::from_integer(&f + 1);
    match hi {
        None => return next,
        Some(h) if &next < h => return next,
        _ => {}
    }
    let fr = BigRational::from_integer(f.clone());
    let hi = hi.unwrap();
    // lo − f ∈ [0, 1), hi − f ∈ (0, 1]: invert both and recurse.
    let new_lo = (hi - &fr).recip();
    let low_part = lo - &fr;
    let inner = if low_part.is_zero() {
        simplest_between(&new_lo, None)
    } else {
        simplest_between(&new_lo, Some(&low_part.recip()))
    };
    fr + inner.recip()
}

/// Mixed-sign integer combination of two nonnegative exponent vectors,
/// following the case analysis of the periodicity argument: the quotient
/// itself, then a power of `g/h`, then a search along the Euclid
/// sequences of the exponent ratios.
pub fn pure_meromorphic_combination(p: &ExponentVector, q: &ExponentVector) -> Result<Combination> {
    if p.0.len() != q.0.len() {
        return Err(Error::DimensionMismatch {
            expected: p.0.len(),
            found: q.0.len(),
        });
    }
    for v in [p, q] {
        if v.0.iter().any(|&e| e < 0) || v.0.iter().all(|&e| e == 0) {
            return Err(Error::InvalidArgument(format!(
                "exponents {v} must be nonnegative and not all zero"
            )));
        }
    }
    if proportional(p, q) {
        return Ok(Combination::NotTransverse);
    }
    let diff = ExponentVector::combine(-1, p, 1, q);
    if diff.is_pure_meromorphic() {
        return Ok(Combination::Pure { w: diff, a: -1, b: 1 });
    }
    // Now q ≤ p or p ≤ q componentwise; arrange q ≤ p.
    let swapped = p.0.iter().zip(&q.0).all(|(a, b)| a <= b);
    let (g, h) = if swapped { (q, p) } else { (p, q) };
    let pack = |a: i64, b: i64| {
        let (a, b) = if swapped { (b, a) } else { (a, b) };
        let w = ExponentVector::combine(a, p, b, q);
        Combination::Pure { w, a, b }
    };
    let n = g.0.len();
    let live: Vec<usize> = (0..n).filter(|&i| g.0[i] > 0 || h.0[i] > 0).collect();
    if live.iter().any(|&i| g.0[i] == h.0[i]) {
        // g / (g/h)^{s} with s past the first strict index's threshold
        let i = *live.iter().find(|&&i| h.0[i] < g.0[i]).expect("not proportional");
        let s = g.0[i] / (g.0[i] - h.0[i]) + 1;
        return Ok(pack(1 - s, s));
    }
    // All live indices strict. w = −α g + β h has sign(β/α − g_i/h_i) at
    // index i, so any β/α strictly between the extreme ratios works.
    let mut lo: Option<BigRational> = None;
    let mut hi: Option<BigRational> = None;
    let mut unbounded = false;
    for &i in &live {
        if h.0[i] == 0 {
            unbounded = true;
            continue;
        }
        let r = BigRational::new(g.0[i].into(), h.0[i].into());
        if lo.as_ref().is_none_or(|l| &r < l) {
            lo = Some(r.clone());
        }
        if hi.as_ref().is_none_or(|u| &r > u) {
            hi = Some(r);
        }
    }
    let lo = lo.expect("h has a positive entry");
    let hi = if unbounded { None } else { hi };
    let r = simplest_between(&lo, hi.as_ref());
    let beta = r.numer().to_i64().ok_or_else(|| Error::InvalidArgument("overflow".into()))?;
    let alpha = r.denom().to_i64().ok_or_else(|| Error::InvalidArgument("overflow".into()))?;
    Ok(pack(-alpha, beta))
}

/// Row echelon basis of `{a ∈ Zⁿ : Σ a_i λ_i = 0}`.
///
/// The real and imaginary parts give two rational equations; the kernel
/// is found by unimodular column reduction and returned in Hermite normal
/// form.
pub fn resonance_lattice(eigs: &[GaussianRational]) -> Vec<Vec<i64>> {
    let n = eigs.len();
    let to_int_row = |vals: Vec<BigRational>| -> Vec<BigInt> {
        let l = vals.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        vals.iter().map(|v| (v * BigRational::from_integer(l.clone())).to_integer()).collect()
    };
    let rows = [
        to_int_row(eigs.iter().map(|e| e.re().clone()).collect()),
        to_int_row(eigs.iter().map(|e| e.im().clone()).collect()),
    ];
    // columns of [A; I]
    let mut cols: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..n)
        .map(|j| {
            let a = rows.iter().map(|r| r[j].clone()).collect();
            let mut u = vec![BigInt::zero(); n];
            u[j] = BigInt::one();
            (a, u)
        })
        .collect();
    let mut start = 0;
    for r in 0..2 {
        // gcd-reduce row r over the columns from `start` on
        loop {
            let nz: Vec<usize> = (start..n).filter(|&j| !cols[j].0[r].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    cols.swap(start, j);
                    start += 1;
                }
                break;
            }
            let piv = *nz.iter().min_by_key(|&&j| cols[j].0[r].abs()).unwrap();
            for &j in &nz {
                if j == piv {
                    continue;
                }
                let f = cols[j].0[r].div_floor(&cols[piv].0[r]);
                let (pa, pu) = cols[piv].clone();
                for k in 0..2 {
                    cols[j].0[k] -= &f * &pa[k];
                }
                for k in 0..n {
                    cols[j].1[k] -= &f * &pu[k];
                }
            }
        }
    }
    let basis: Vec<Vec<BigInt>> = cols[start..].iter().map(|(_, u)| u.clone()).collect();
    hermite_rows(basis)
        .into_iter()
        .map(|r| r.iter().map(|x| x.to_i64().expect("small lattice entries")).collect())
        .collect()
}

/// Hermite normal form of the row lattice (positive pivots, reduced
/// entries above each pivot).
fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let m = rows.len();
    if m == 0 {
        return rows;
    }
    let n = rows[0].len();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..m).filter(|&i| !rows[i][c].is_zero()).collect();
            if nz.is_empty() {
                break;
            }
            let piv = *nz.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            rows.swap(r, piv);
            let mut done = true;
            for i in (r + 1)..m {
                if rows[i][c].is_zero() {
                    continue;
                }
                let f = rows[i][c].div_floor(&rows[r][c]);
                let pr = rows[r].clone();
                for k in 0..n {
                    rows[i][k] -= &f * &pr[k];
                }
                if !rows[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if rows[r][c].is_zero() {
            continue;
        }
        if rows[r][c].is_negative() {
            rows[r] = rows[r].iter().map(|x| -x).collect();
        }
        for i in 0..r {
            let f = rows[i][c].div_floor(&rows[r][c]);
            let pr = rows[r].clone();
            for k in 0..n {
                rows[i][k] -= &f * &pr[k];
            }
        }
        r += 1;
    }
    rows.truncate(r);
    rows
}

fn gaussian_ratio_positive(r: &GaussianRational) -> Option<BigRational> {
    r.is_real().then(|| r.re().clone()).filter(|x| x.is_positive())
}

/// Holomorphic monomial first integrals of a linear diagonal field.
///
/// In dimension three (condition (⋆) with an isolated axis) this is the
/// pair `x_j^{q} x_axis^{p}` with `p/q = −λ_j/λ_axis` in lowest terms, one
/// per transverse variable. In dimension two, with a negative rational
/// eigenvalue ratio, it is the single monomial `x^{p} y^{q}`.
pub fn monomial_first_integrals(x: &VectorFieldGerm) -> Result<Vec<TruncatedSeries>> {
    if !x.is_linear() {
        return Err(Error::NotLinear);
    }
    let eig = eigen_data(x)?;
    let dim = x.dim();
    let axis = if dim == 3 {
        let star = condition_star(&eig)?;
        match (star.holds, star.isolated_index) {
            (true, Some(a)) => a,
            _ => return Err(Error::NotStarGerm("no isolated eigenvalue".into())),
        }
    } else {
        1
    };
    let la = eig.eigenvalue(axis).clone();
    let mut out = Vec::new();
    for j in (0..dim).filter(|&j| j != axis) {
        let r = (-eig.eigenvalue(j)).checked_div(&la)?;
        let r = gaussian_ratio_positive(&r)
            .ok_or_else(|| Error::NotStarGerm(format!("eigenvalue ratio {r} is not negative real")))?;
        let p = r.numer().to_u32().ok_or_else(|| Error::InvalidArgument("exponent overflow".into()))?;
        let q = r.denom().to_u32().ok_or_else(|| Error::InvalidArgument("exponent overflow".into()))?;
        let mut e = vec![0u32; dim];
        e[j] = q;
        e[axis] = p;
        out.push(e);
    }
    // High enough for the wedge of the two differentials to be visible.
    let degrees: u32 = out.iter().map(|e| e.iter().sum::<u32>()).sum();
    let order = x.order().max(degrees);
    Ok(out
        .iter()
        .map(|e| TruncatedSeries::monomial(dim, order, e, TauScalar::one()))
        .collect())
}

/// `X(f) ≡ 0` up to the order of `X(f)`.
pub fn check_invariant(x: &VectorFieldGerm, f: &TruncatedSeries) -> Result<bool> {
    Ok(x.derive(f)?.is_zero())
}

/// The 2×2 minors of the Jacobian of `(f, g)`.
fn wedge_minors(f: &TruncatedSeries, g: &TruncatedSeries) -> Result<Vec<TruncatedSeries>> {
    let n = f.dim();
    let df: Vec<TruncatedSeries> = (0..n).map(|i| f.partial(i)).collect();
    let dg: Vec<TruncatedSeries> = (0..n).map(|i| g.partial(i)).collect();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            out.push(df[i].mul(&dg[j])?.sub(&df[j].mul(&dg[i])?)?);
        }
    }
    Ok(out)
}

/// Both components are invariant and `dF₁ ∧ dF₂ ≢ 0`.
pub fn check_first_integral_map(
    x: &VectorFieldGerm,
    f: &[TruncatedSeries; 2],
) -> Result<bool> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: x.dim(),
        });
    }
    for c in f {
        if c.dim() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 3,
                found: c.dim(),
            });
        }
    }
    if !check_invariant(x, &f[0])? || !check_invariant(x, &f[1])? {
        return Ok(false);
    }
    Ok(wedge_minors(&f[0], &f[1])?.iter().any(|m| !m.is_zero()))
}

/// `ω = A dx + B dy + C dz`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneFormGerm {
    coefficients: [TruncatedSeries; 3],
}

/// Coefficients of a two-form on `dy∧dz`, `dz∧dx`, `dx∧dy`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFormGerm {
    pub dydz: TruncatedSeries,
    pub dzdx: TruncatedSeries,
    pub dxdy: TruncatedSeries,
}

impl TwoFormGerm {
    fn components(&self) -> [&TruncatedSeries; 3] {
        [&self.dydz, &self.dzdx, &self.dxdy]
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }
}

impl OneFormGerm {
    pub fn new(coefficients: [TruncatedSeries; 3]) -> Result<Self> {
        for c in &coefficients {
            if c.dim() != 3 {
                return Err(Error::DimensionMismatch {
                    expected: 3,
                    found: c.dim(),
                });
            }
        }
        let order = coefficients.iter().map(|c| c.order()).min().unwrap_or(0);
        Ok(OneFormGerm {
            coefficients: coefficients.map(|c| c.truncate(order)),
        })
    }

    /// `df`.
    pub fn exact(f: &TruncatedSeries) -> Result<Self> {
        Self::new([f.partial(0), f.partial(1), f.partial(2)])
    }

    pub fn coefficients(&self) -> &[TruncatedSeries; 3] {
        &self.coefficients
    }

    pub fn order(&self) -> u32 {
        self.coefficients[0].order()
    }

    pub fn exterior_derivative(&self) -> TwoFormGerm {
        let [a, b, c] = &self.coefficients;
        let d = |u: &TruncatedSeries, i: usize, v: &TruncatedSeries, j: usize| {
            u.partial(i).sub(&v.partial(j)).expect("dimension 3")
        };
        TwoFormGerm {
            dydz: d(c, 1, b, 2),
            dzdx: d(a, 2, c, 0),
            dxdy: d(b, 0, a, 1),
        }
    }

    /// Coefficient of `dx∧dy∧dz` in `ω ∧ dω`.
    pub fn wedge_derivative(&self) -> TruncatedSeries {
        let dw = self.exterior_derivative();
        let [a, b, c] = &self.coefficients;
        let terms = [(a, &dw.dydz), (b, &dw.dzdx), (c, &dw.dxdy)];
        let order = self.order().saturating_sub(1);
        let mut acc = TruncatedSeries::zero(3, order);
        for (u, v) in terms {
            acc = acc.add(&u.mul(v).expect("dimension 3")).expect("dimension 3");
        }
        acc
    }
}

/// `i_X ω = A X₁ + B X₂ + C X₃`.
pub fn interior_product(x: &VectorFieldGerm, w: &OneFormGerm) -> Result<TruncatedSeries> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: x.dim(),
        });
    }
    let mut acc = TruncatedSeries::zero(3, x.order().min(w.order()));
    for (a, xi) in w.coefficients.iter().zip(x.components()) {
        acc = acc.add(&a.mul(xi)?)?;
    }
    Ok(acc)
}

/// `ω ∧ dω ≡ 0` up to order `N − 1`.
pub fn frobenius_check(w: &OneFormGerm) -> bool {
    w.wedge_derivative().is_zero()
}

/// `dω` does not vanish identically along the coordinate axis `axis`.
pub fn kupka_nonvanishing(w: &OneFormGerm, axis: usize) -> bool {
    let dw = w.exterior_derivative();
    dw.components().iter().any(|c| {
        c.terms()
            .any(|(m, _)| (0..3).all(|k| k == axis || m.get(k) == 0))
    })
}

/// The radial-type form `λ_b x_b dx_a − λ_a x_a dx_b` on the transverse
/// pair `(a, b)` of a diagonal field.
pub fn radial_flag_form(
    eigs: &[GaussianRational],
    axis: usize,
    order: u32,
) -> Result<OneFormGerm> {
    let t: Vec<usize> = (0..3).filter(|&k| k != axis).collect();
    let (a, b) = (t[0], t[1]);
    let mut coeffs = [
        TruncatedSeries::zero(3, order),
        TruncatedSeries::zero(3, order),
        TruncatedSeries::zero(3, order),
    ];
    coeffs[a] = TruncatedSeries::var(3, order, b).scale(&TauScalar::from(eigs[b].clone()));
    coeffs[b] = TruncatedSeries::var(3, order, a).scale(&TauScalar::from(-eigs[a].clone()));
    OneFormGerm::new(coeffs)
}

/// Results of testing the radial-type flag against a field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagChecks {
    pub interior_product_vanishes: bool,
    pub integrable: bool,
    pub kupka: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    FirstIntegralExpected,
    NoFirstIntegral,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::FirstIntegralExpected => "FirstIntegralExpected",
            Verdict::NoFirstIntegral => "NoFirstIntegral",
            Verdict::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DiagnosisReport {
    pub eigenvalues: Vec<GaussianRational>,
    pub star: StarVerdict,
    pub axis: Option<usize>,
    pub holonomy: Option<DiffeoGerm>,
    pub period: Option<u32>,
    pub first_integrals: Vec<TruncatedSeries>,
    pub flag_checks: Option<FlagChecks>,
    pub verdict: Verdict,
    pub order: u32,
    pub notes: Vec<String>,
}

pub const DEFAULT_ORDER: u32 = 8;
pub const DEFAULT_PMAX: u32 = 24;

/// Runs the star test, the holonomy computation and the periodicity test,
/// and for linear fields also produces the monomial first integrals.
pub fn diagnose(x: &VectorFieldGerm, order: u32, pmax: u32) -> Result<DiagnosisReport> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: x.dim(),
        });
    }
    let eig = eigen_data(x)?;
    let star = condition_star(&eig)?;
    let mut report = DiagnosisReport {
        eigenvalues: eig.eigenvalues.clone(),
        star: star.clone(),
        axis: None,
        holonomy: None,
        period: None,
        first_integrals: Vec::new(),
        flag_checks: None,
        verdict: Verdict::Inconclusive,
        order,
        notes: Vec::new(),
    };
    if !star.holds {
        report.notes.push("condition (*) violated".into());
        return Ok(report);
    }
    let Some(axis) = star.isolated_index else {
        report
            .notes
            .push("condition (*) holds but no eigenvalue is isolated on its half-line".into());
        return Ok(report);
    };
    report.axis = Some(axis);

    let w = radial_flag_form(&eig.eigenvalues, axis, x.order())?;
    report.flag_checks = Some(FlagChecks {
        interior_product_vanishes: interior_product(x, &w)?.is_zero(),
        integrable: frobenius_check(&w),
        kupka: kupka_nonvanishing(&w, axis),
    });

    if x.is_linear() {
        let ints = monomial_first_integrals(x)?;
        let pair = [ints[0].clone(), ints[1].clone()];
        if check_first_integral_map(x, &pair)? {
            report.notes.push("monomial first integrals verified".into());
        } else {
            report.notes.push("monomial first integrals failed verification".into());
        }
        report.first_integrals = ints;
    }

    match holonomy_generator(x, axis, order) {
        Ok(h) => {
            report.period = formal_period(&h, pmax);
            report.holonomy = Some(h);
        }
        Err(
            e @ (Error::NonIntegerRatio(_)
            | Error::UnsupportedCoupling(_)
            | Error::NotPolynomialInAxisVariable),
        ) => {
            report.notes.push(format!("{}: {e}", e.kind()));
            return Ok(report);
        }
        Err(e) => return Err(e),
    }
    report
        .notes
        .push(format!("holonomy computed to order {order}; periodicity tested up to {pmax}"));

    if !x.is_linear() && report.period.is_some() {
        report
            .notes
            .push("nonlinear field: linearization is not performed, the holonomy condition is certified".into());
    }

    let h = report.holonomy.as_ref().expect("set above");
    report.verdict = if report.period.is_some() {
        Verdict::FirstIntegralExpected
    } else if !h.is_identity() && h.has_identity_linear_part() {
        Verdict::NoFirstIntegral
    } else {
        report
            .notes
            .push(format!("no period up to {pmax} but holonomy linear part is not the identity"));
        Verdict::Inconclusive
    };
    Ok(report)
}

/// Integer exponent of a monomial, for display and tests.
pub fn monomial_exponents(f: &TruncatedSeries) -> Option<Multidegree> {
    let mut it = f.terms();
    let (m, _) = it.next()?;
    it.next().is_none().then_some(*m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[i64]) -> ExponentVector {
        ExponentVector::new(v.to_vec())
    }

    fn gs(v: &[i64]) -> Vec<GaussianRational> {
        v.iter().map(|&x| GaussianRational::from_int(x)).collect()
    }

    fn mono(order: u32, e: &[u32], c: i64) -> TruncatedSeries {
        TruncatedSeries::monomial(e.len(), order, e, TauScalar::from_int(c))
    }

    fn linear(eigs: &[i64], order: u32) -> VectorFieldGerm {
        let t: Vec<TauScalar> = eigs.iter().map(|&x| TauScalar::from_int(x)).collect();
        VectorFieldGerm::linear_diagonal(&t, order)
    }

    fn pure(p: &[i64], q: &[i64]) -> ExponentVector {
        match pure_meromorphic_combination(&ev(p), &ev(q)).unwrap() {
            Combination::Pure { w, a, b } => {
                assert_eq!(w, ExponentVector::combine(a, &ev(p), b, &ev(q)));
                assert!(w.is_pure_meromorphic());
                w
            }
            Combination::NotTransverse => panic!("expected a combination"),
        }
    }

    #[test]
    fn combination_cases() {
        assert_eq!(pure(&[2, 1], &[1, 2]), ev(&[-1, 1]));
        assert_eq!(pure(&[3, 2], &[1, 2]), ev(&[-1, 2]));
        assert_eq!(pure(&[1, 2], &[3, 2]), ev(&[-1, 2]));
        assert!(pure(&[3, 2], &[2, 1]).is_pure_meromorphic());
        assert_eq!(
            pure_meromorphic_combination(&ev(&[2, 4]), &ev(&[1, 2])).unwrap(),
            Combination::NotTransverse
        );
    }

    #[test]
    fn combination_with_zero_entries() {
        assert!(pure(&[2, 1, 0], &[1, 0, 0]).is_pure_meromorphic());
        assert!(pure(&[4, 5], &[5, 6]).is_pure_meromorphic());
        assert!(pure(&[3, 3, 1], &[3, 3, 0]).is_pure_meromorphic());
    }

    #[test]
    fn simplest_fraction() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(simplest_between(&r(3, 2), Some(&r(2, 1))), r(5, 3));
        assert_eq!(simplest_between(&r(4, 5), Some(&r(5, 6))), r(9, 11));
        assert_eq!(simplest_between(&r(0, 1), Some(&r(1, 3))), r(1, 4));
        assert_eq!(simplest_between(&r(7, 2), None), r(4, 1));
    }

    #[test]
    fn lattices() {
        assert_eq!(resonance_lattice(&gs(&[2, 3, -1])), vec![vec![1, 0, 2], vec![0, 1, 3]]);
        assert_eq!(resonance_lattice(&gs(&[1, 1, -1])), vec![vec![1, 0, 1], vec![0, 1, 1]]);
        let e = vec![
            GaussianRational::from_int(1),
            GaussianRational::from_parts((1, 1), (1, 1)),
            GaussianRational::from_int(-1),
        ];
        assert_eq!(resonance_lattice(&e), vec![vec![1, 0, 1]]);
        assert!(resonance_lattice(&gs(&[1, 2, 3])).iter().all(|v| v.iter().any(|&x| x < 0)));
    }

    #[test]
    fn monomial_integrals() {
        let x = linear(&[1, 3, -1], 4);
        let f = monomial_first_integrals(&x).unwrap();
        assert_eq!(f[0].to_string(), "x*z");
        assert_eq!(f[1].to_string(), "y*z^3");
        assert!(check_first_integral_map(&x, &[f[0].clone(), f[1].clone()]).unwrap());
        let f = monomial_first_integrals(&linear(&[1, 1, -1], 4)).unwrap();
        assert_eq!((f[0].to_string(), f[1].to_string()), ("x*z".into(), "y*z".into()));
        // q = 2, p = 3: 3y∂y − 2x∂x
        let f = monomial_first_integrals(&linear(&[-2, 3], 4)).unwrap();
        assert_eq!(f[0].to_string(), "x^3*y^2");
        assert_eq!(
            monomial_first_integrals(&VectorFieldGerm::new(vec![mono(3, &[2, 0], 1), mono(3, &[0, 1], 1)]).unwrap()),
            Err(Error::NotLinear)
        );
    }

    #[test]
    fn invariance_checks() {
        let x = linear(&[1, 3, -1], 4);
        assert!(check_invariant(&x, &mono(4, &[1, 0, 1], 1)).unwrap());
        assert!(!check_invariant(&x, &mono(4, &[1, 1, 0], 1)).unwrap());
        // xy(py∂y − qx∂x) with (p, q) = (2, 3) keeps x^2 y^3
        let o = 8;
        let remark = VectorFieldGerm::new(vec![mono(o, &[2, 1], -3), mono(o, &[1, 2], 2)]).unwrap();
        assert!(check_invariant(&remark, &mono(o, &[2, 3], 1)).unwrap());
        let xz = mono(6, &[1, 0, 1], 1);
        let xz2 = xz.mul(&xz).unwrap();
        assert!(!check_first_integral_map(&x, &[xz.clone(), xz2]).unwrap());
        assert!(!check_first_integral_map(&x, &[xz.clone(), xz]).unwrap());
    }

    fn form(a: TruncatedSeries, b: TruncatedSeries, c: TruncatedSeries) -> OneFormGerm {
        OneFormGerm::new([a, b, c]).unwrap()
    }

    #[test]
    fn flag_forms() {
        let o = 5;
        let (m, n, k) = (2, 3, 1);
        let x = linear(&[m, n, -k], o);
        let w = form(mono(o, &[0, 1, 0], n), mono(o, &[1, 0, 0], -m), TruncatedSeries::zero(3, o));
        assert!(interior_product(&x, &w).unwrap().is_zero());
        assert!(frobenius_check(&w));
        assert!(kupka_nonvanishing(&w, 2));
        assert_eq!(w.exterior_derivative().dxdy, TruncatedSeries::constant(3, o - 1, TauScalar::from_int(-(m + n))));

        let xs = VectorFieldGerm::new(vec![mono(o, &[1, 0, 0], 1), TruncatedSeries::zero(3, o), TruncatedSeries::zero(3, o)]).unwrap();
        let zdx = form(mono(o, &[0, 0, 1], 1), TruncatedSeries::zero(3, o), TruncatedSeries::zero(3, o));
        assert_eq!(interior_product(&xs, &zdx).unwrap(), mono(o, &[1, 0, 1], 1));
        let zero = form(TruncatedSeries::zero(3, o), TruncatedSeries::zero(3, o), TruncatedSeries::zero(3, o));
        assert!(interior_product(&x, &zero).unwrap().is_zero());

        let exact = OneFormGerm::exact(&mono(6, &[2, 0, 3], 1)).unwrap();
        assert!(frobenius_check(&exact));
        assert!(!kupka_nonvanishing(&exact, 2));

        let w = form(mono(o, &[0, 0, 1], 1), mono(o, &[1, 0, 0], 1), mono(o, &[0, 1, 0], 1));
        assert!(!frobenius_check(&w));
        let expected = mono(o, &[1, 0, 0], 1)
            .add(&mono(o, &[0, 1, 0], 1))
            .unwrap()
            .add(&mono(o, &[0, 0, 1], 1))
            .unwrap();
        assert_eq!(w.wedge_derivative(), expected.truncate(o - 1));
    }

    #[test]
    fn diagnosis_of_linear_field() {
        let r = diagnose(&linear(&[-1, -3, 1], 8), 8, 24).unwrap();
        assert_eq!(r.axis, Some(2));
        assert_eq!(r.period, Some(1));
        assert_eq!(r.verdict, Verdict::FirstIntegralExpected);
        let names: Vec<String> = r.first_integrals.iter().map(|f| f.to_string()).collect();
        assert_eq!(names, vec!["x*z", "y*z^3"]);
        assert_eq!(
            r.flag_checks,
            Some(FlagChecks {
                interior_product_vanishes: true,
                integrable: true,
                kupka: true
            })
        );
    }

    #[test]
    fn diagnosis_without_star() {
        let r = diagnose(&linear(&[1, 2, 3], 4), 4, 24).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.notes.iter().any(|n| n.contains("condition (*) violated")));
    }

    #[test]
    fn diagnosis_non_integer_ratio() {
        let r = diagnose(&linear(&[-1, -3, 2], 4), 4, 24).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.notes.iter().any(|n| n.starts_with("NonIntegerRatio")));
    }
}
