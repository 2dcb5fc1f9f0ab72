//! Holonomy of a foliation around its distinguished axis.
//!
//! The loop `γ(t) = e^{2πit}` on the axis is lifted along the leaves. With
//! the field normalised so that its axis component is exactly `x₃`, the
//! lifting `Γ(t, x₁, x₂)` solves `∂Γ_j/∂t = τ·Y_j(Γ₁, Γ₂, γ(t))`. Expanding
//! `Γ_j = Σ c^j_I(t) x^I`, each coefficient obeys a scalar linear ODE
//! `c' = −τ m_j c + τ·forcing` whose forcing is an exponential polynomial in
//! `t` built from coefficients already solved. Evaluating at `t = 1` gives
//! the holonomy generator exactly.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::germs::{condition_star, eigen_data, VectorFieldGerm};
use crate::scalars::{GaussianRational, TauScalar};
use crate::series::{DiffeoGerm, Multidegree, TruncatedSeries};

/// `Σ_k p_k(t)·e^{2πikt}`: polynomials in `t` with [`TauScalar`]
/// coefficients, indexed by integer frequency.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ExpPoly {
    terms: BTreeMap<i64, Vec<TauScalar>>,
}

fn trim(p: &mut Vec<TauScalar>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn poly_add(a: &mut Vec<TauScalar>, b: &[TauScalar]) {
    if a.len() < b.len() {
        a.resize(b.len(), TauScalar::zero());
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    trim(a);
}

fn poly_mul(a: &[TauScalar], b: &[TauScalar]) -> Vec<TauScalar> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![TauScalar::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            r[i + j] += &(x * y);
        }
    }
    trim(&mut r);
    r
}

impl ExpPoly {
    pub fn zero() -> Self {
        ExpPoly::default()
    }

    pub fn constant(c: TauScalar) -> Self {
        Self::term(0, vec![c])
    }

    /// `e^{2πikt}`.
    pub fn exp(k: i64) -> Self {
        Self::term(k, vec![TauScalar::one()])
    }

    /// `p(t)·e^{2πikt}` with `p` given by its coefficients in increasing
    /// powers of `t`.
    pub fn term(k: i64, poly: Vec<TauScalar>) -> Self {
        let mut r = ExpPoly::zero();
        r.add_poly(k, &poly);
        r
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn frequencies(&self) -> impl Iterator<Item = (i64, &[TauScalar])> {
        self.terms.iter().map(|(k, p)| (*k, p.as_slice()))
    }

    pub fn poly(&self, k: i64) -> &[TauScalar] {
        self.terms.get(&k).map(|p| p.as_slice()).unwrap_or(&[])
    }

    fn add_poly(&mut self, k: i64, p: &[TauScalar]) {
        let entry = self.terms.entry(k).or_default();
        poly_add(entry, p);
        if entry.is_empty() {
            self.terms.remove(&k);
        }
    }

    pub fn add(&self, o: &ExpPoly) -> ExpPoly {
        let mut r = self.clone();
        for (k, p) in &o.terms {
            r.add_poly(*k, p);
        }
        r
    }

    pub fn neg(&self) -> ExpPoly {
        ExpPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, p)| (*k, p.iter().map(|c| -c).collect()))
                .collect(),
        }
    }

    pub fn sub(&self, o: &ExpPoly) -> ExpPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &ExpPoly) -> ExpPoly {
        let mut r = ExpPoly::zero();
        for (ka, pa) in &self.terms {
            for (kb, pb) in &o.terms {
                r.add_poly(ka + kb, &poly_mul(pa, pb));
            }
        }
        r
    }

    pub fn scale(&self, c: &TauScalar) -> ExpPoly {
        let mut r = ExpPoly::zero();
        for (k, p) in &self.terms {
            let q: Vec<TauScalar> = p.iter().map(|x| x * c).collect();
            r.add_poly(*k, &q);
        }
        r
    }

    /// `d/dt`: `(p' + τ k p)·e^{2πikt}` per frequency.
    pub fn derivative(&self) -> ExpPoly {
        let mut r = ExpPoly::zero();
        for (k, p) in &self.terms {
            let mut q: Vec<TauScalar> = vec![TauScalar::zero(); p.len()];
            for (j, c) in p.iter().enumerate().skip(1) {
                q[j - 1] += &c.scale_int(j as i64);
            }
            if *k != 0 {
                let tk = TauScalar::tau().scale_int(*k);
                for (j, c) in p.iter().enumerate() {
                    q[j] += &(c * &tk);
                }
            }
            r.add_poly(*k, &q);
        }
        r
    }

    /// Value at `t = 0`.
    pub fn eval_at_zero(&self) -> TauScalar {
        let mut acc = TauScalar::zero();
        for p in self.terms.values() {
            if let Some(c) = p.first() {
                acc += c;
            }
        }
        acc
    }

    /// Value at `t = 1`, where every `e^{2πik}` equals 1.
    pub fn eval_at_one(&self) -> TauScalar {
        let mut acc = TauScalar::zero();
        for p in self.terms.values() {
            for c in p {
                acc += c;
            }
        }
        acc
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (k, p) in &self.terms {
            let poly: Vec<String> = p
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| match j {
                    0 => format!("({c})"),
                    1 => format!("({c})*t"),
                    _ => format!("({c})*t^{j}"),
                })
                .collect();
            let poly = poly.join(" + ");
            if *k == 0 {
                parts.push(poly);
            } else {
                parts.push(format!("[{poly}]*exp({k}*tau*t)"));
            }
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// Solves `c' = −τ·m·c + τ·forcing`, `c(0) = c0`, in closed form.
///
/// Each frequency `k ≠ −m` has a polynomial particular solution found by
/// back-substitution from the top degree; the resonant frequency `k = −m`
/// is integrated directly. The homogeneous part carries the remaining
/// initial value on frequency `−m`.
pub fn ode_solve(m: i64, forcing: &ExpPoly, c0: &TauScalar) -> ExpPoly {
    let mut sol = ExpPoly::zero();
    for (k, p) in forcing.frequencies() {
        let s = k + m;
        if s == 0 {
            // q' = τ p
            let mut q = vec![TauScalar::zero(); p.len() + 1];
            for (j, c) in p.iter().enumerate() {
                q[j + 1] = c.shift(1).scale(&GaussianRational::from_ratio(1, j as i64 + 1));
            }
            sol.add_poly(k, &q);
        } else {
            // q' + τ s q = τ p
            let inv_s = GaussianRational::from_ratio(1, s);
            let d = p.len();
            let mut q = vec![TauScalar::zero(); d];
            for j in (0..d).rev() {
                let mut v = p[j].scale(&inv_s);
                if j + 1 < d {
                    let carry = q[j + 1]
                        .scale_int(j as i64 + 1)
                        .shift(-1)
                        .scale(&inv_s);
                    v -= &carry;
                }
                q[j] = v;
            }
            sol.add_poly(k, &q);
        }
    }
    let rest = c0 - &sol.eval_at_zero();
    sol.add_poly(-m, &[rest]);
    sol
}

/// Free-function form of [`ExpPoly::eval_at_one`].
pub fn eval_at_one(c: &ExpPoly) -> TauScalar {
    c.eval_at_one()
}

/// Series in the transverse variables `(x₁, x₂)` with [`ExpPoly`]
/// coefficients, truncated at total degree `order`.
#[derive(Clone, Debug, PartialEq, Default)]
struct ExpSeries {
    order: u32,
    coeffs: BTreeMap<Multidegree, ExpPoly>,
}

impl ExpSeries {
    fn zero(order: u32) -> Self {
        ExpSeries {
            order,
            coeffs: BTreeMap::new(),
        }
    }

    fn one(order: u32) -> Self {
        let mut s = Self::zero(order);
        s.add_term(Multidegree::zero(2), &ExpPoly::constant(TauScalar::one()));
        s
    }

    fn add_term(&mut self, m: Multidegree, c: &ExpPoly) {
        if c.is_zero() || m.total() > self.order {
            return;
        }
        let e = self.coeffs.entry(m).or_default();
        *e = e.add(c);
        if e.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    fn add(&self, o: &ExpSeries) -> ExpSeries {
        let mut r = self.clone();
        for (m, c) in &o.coeffs {
            r.add_term(*m, c);
        }
        r
    }

    fn mul(&self, o: &ExpSeries) -> ExpSeries {
        let mut r = ExpSeries::zero(self.order.min(o.order));
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &o.coeffs {
                if ma.total() + mb.total() <= r.order {
                    r.add_term(ma.add(mb), &ca.mul(cb));
                }
            }
        }
        r
    }

    fn scale(&self, c: &ExpPoly) -> ExpSeries {
        let mut r = ExpSeries::zero(self.order);
        for (m, v) in &self.coeffs {
            r.add_term(*m, &v.mul(c));
        }
        r
    }

    fn derivative(&self) -> ExpSeries {
        let mut r = ExpSeries::zero(self.order);
        for (m, v) in &self.coeffs {
            r.add_term(*m, &v.derivative());
        }
        r
    }
}

/// Powers `Γ^0, Γ^1, …` truncated at the series order.
fn powers(g: &ExpSeries, max: u32) -> Vec<ExpSeries> {
    let mut out = vec![ExpSeries::one(g.order)];
    for _ in 0..max {
        let next = out.last().unwrap().mul(g);
        out.push(next);
    }
    out
}

/// `f(Γ₁, Γ₂, e^{2πit})` for a series `f` in `(x₁, x₂, x₃)`.
fn substitute_lift(f: &TruncatedSeries, g1: &ExpSeries, g2: &ExpSeries, order: u32) -> ExpSeries {
    let max1 = f.terms().map(|(m, _)| m.get(0)).max().unwrap_or(0).min(order);
    let max2 = f.terms().map(|(m, _)| m.get(1)).max().unwrap_or(0).min(order);
    let p1 = powers(g1, max1);
    let p2 = powers(g2, max2);
    let mut acc = ExpSeries::zero(order);
    for (m, c) in f.terms() {
        let (a, b, l) = (m.get(0), m.get(1), m.get(2));
        if a + b > order {
            continue;
        }
        let coeff = ExpPoly::term(l as i64, vec![c.clone()]);
        let prod = p1[a as usize].mul(&p2[b as usize]).scale(&coeff);
        acc = acc.add(&prod);
    }
    acc
}

/// The germ `−m₁[x₁(1+a₁) + x₂b₁]∂₁ − m₂x₂(1+a₂)∂₂ + x₃∂₃`, tangent to the
/// input field, with the distinguished axis placed third.
#[derive(Clone, Debug, PartialEq)]
pub struct HolonomyNormalForm {
    pub m1: i64,
    pub m2: i64,
    pub a1: TruncatedSeries,
    pub b1: TruncatedSeries,
    pub a2: TruncatedSeries,
    /// Original coordinate indices playing the roles of `x₁`, `x₂`.
    pub transverse: [usize; 2],
    pub axis: usize,
    /// The unit `u` divided out depends on the axis variable, so the
    /// normalised field is a non-terminating series in `x₃`.
    pub axis_series: bool,
}

impl HolonomyNormalForm {
    pub fn order(&self) -> u32 {
        self.a1.order()
    }

    /// The normalised field in the coordinates `(x₁, x₂, x₃)`.
    pub fn field(&self) -> VectorFieldGerm {
        let order = self.order();
        let x1 = TruncatedSeries::var(3, order, 0);
        let x2 = TruncatedSeries::var(3, order, 1);
        let x3 = TruncatedSeries::var(3, order, 2);
        let one = TruncatedSeries::one(3, order);
        let c1 = x1
            .mul(&one.add(&self.a1).unwrap())
            .unwrap()
            .add(&x2.mul(&self.b1).unwrap())
            .unwrap()
            .scale_int(-self.m1);
        let c2 = x2
            .mul(&one.add(&self.a2).unwrap())
            .unwrap()
            .scale_int(-self.m2);
        VectorFieldGerm::new(vec![c1, c2, x3]).expect("normal form vanishes at the origin")
    }
}

/// Rewrites `X` in the coordinates `(other, other, axis)`: `perm[new] = old`.
fn reorder_field(x: &VectorFieldGerm, perm: [usize; 3]) -> VectorFieldGerm {
    let order = x.order();
    let mut inv = [0usize; 3];
    for (new, &old) in perm.iter().enumerate() {
        inv[old] = new;
    }
    let vars: Vec<TruncatedSeries> = (0..3).map(|o| TruncatedSeries::var(3, order, inv[o])).collect();
    let comps = perm
        .iter()
        .map(|&old| x.component(old).substitute(&vars).expect("dimension 3"))
        .collect();
    VectorFieldGerm::new(comps).expect("reordering keeps the singular point")
}

/// Divides `X` by the unit `X_axis / x_axis` and packages the result.
pub fn normalize_axis(x: &VectorFieldGerm, axis: usize) -> Result<HolonomyNormalForm> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: x.dim(),
        });
    }
    if axis > 2 {
        return Err(Error::InvalidArgument(format!("axis index {axis}")));
    }
    let eig = eigen_data(x)?;
    let star = condition_star(&eig)?;
    if !star.holds {
        return Err(Error::NotStarGerm("condition (*) fails".into()));
    }
    if star.isolated_index != Some(axis) {
        return Err(Error::NotStarGerm(format!(
            "isolated eigenvalue sits on axis {:?}, not {axis}",
            star.isolated_index
        )));
    }
    let others: Vec<usize> = (0..3).filter(|&k| k != axis).collect();
    let perm = [others[0], others[1], axis];
    let z = reorder_field(x, perm);
    let order = z.order();
    let x3 = Multidegree::unit(3, 2);
    let u = z
        .component(2)
        .div_monomial(&x3)
        .ok_or_else(|| Error::NotStarGerm("axis component is not divisible by the axis variable".into()))?
        .with_order(order);
    let axis_series = u.terms().any(|(m, _)| m.total() > 0 && m.get(2) > 0);
    let u_inv = u.reciprocal()?;
    let y: Vec<TruncatedSeries> = z
        .components()
        .iter()
        .map(|c| c.mul(&u_inv))
        .collect::<Result<_>>()?;

    let lambda = |k: usize| y[k].coeff(&Multidegree::unit(3, k));
    let mut ms = [0i64; 2];
    for k in 0..2 {
        let l = lambda(k);
        let g = l.as_gaussian().ok_or(Error::TauDependent)?;
        match g.as_integer().and_then(|n| i64::try_from(n).ok()) {
            Some(n) if n < 0 => ms[k] = -n,
            _ => return Err(Error::NonIntegerRatio(g.to_string())),
        }
    }
    let divisible = |k: usize| y[k].terms().all(|(m, _)| m.get(k) >= 1);
    let swap = if divisible(1) {
        false
    } else if divisible(0) {
        true
    } else {
        return Err(Error::UnsupportedCoupling(
            "neither transverse component is divisible by its own variable".into(),
        ));
    };
    let (i1, i2) = if swap { (1, 0) } else { (0, 1) };
    // Express everything in (x₁, x₂, x₃) = (y_i1, y_i2, axis).
    let swap_vars: Vec<TruncatedSeries> = if swap {
        vec![
            TruncatedSeries::var(3, order, 1),
            TruncatedSeries::var(3, order, 0),
            TruncatedSeries::var(3, order, 2),
        ]
    } else {
        (0..3).map(|k| TruncatedSeries::var(3, order, k)).collect()
    };
    let y1 = y[i1].substitute(&swap_vars)?;
    let y2 = y[i2].substitute(&swap_vars)?;
    let (m1, m2) = (ms[i1], ms[i2]);

    let e1 = Multidegree::unit(3, 0);
    let e2 = Multidegree::unit(3, 1);
    let p1 = y1.scale(&TauScalar::from_ratio(-1, m1));
    let with_x2 = p1.filter(|m| m.get(1) >= 1);
    let rest = p1.filter(|m| m.get(1) == 0);
    let b1 = with_x2.div_monomial(&e2).expect("filtered on x2").with_order(order);
    let a1 = rest
        .div_monomial(&e1)
        .ok_or_else(|| Error::NotStarGerm("distinguished axis is not invariant".into()))?
        .with_order(order)
        .sub(&TruncatedSeries::one(3, order))?;
    let a2 = y2
        .scale(&TauScalar::from_ratio(-1, m2))
        .div_monomial(&e2)
        .expect("checked divisibility")
        .with_order(order)
        .sub(&TruncatedSeries::one(3, order))?;
    Ok(HolonomyNormalForm {
        m1,
        m2,
        a1,
        b1,
        a2,
        transverse: [perm[i1], perm[i2]],
        axis,
        axis_series,
    })
}

/// One solved coefficient of the lifting: `c^j_I(t)` with its forcing.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftEntry {
    pub coefficient: ExpPoly,
    pub forcing: ExpPoly,
    pub initial: TauScalar,
}

/// Coefficients of `Γ₁, Γ₂` up to the transverse order.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftTable {
    pub order: u32,
    pub m: [i64; 2],
    entries: [BTreeMap<Multidegree, LiftEntry>; 2],
}

impl LiftTable {
    /// `c^{j}_{I}` for `j ∈ {0, 1}` (i.e. `Γ₁`, `Γ₂`) and a transverse
    /// exponent `I = (i, k)`.
    pub fn coefficient(&self, j: usize, exps: [u32; 2]) -> ExpPoly {
        self.entries[j]
            .get(&Multidegree::new(&exps))
            .map(|e| e.coefficient.clone())
            .unwrap_or_default()
    }

    pub fn entries(&self, j: usize) -> impl Iterator<Item = (&Multidegree, &LiftEntry)> {
        self.entries[j].iter()
    }

    /// `c' + τ m c − τ·forcing` for every stored entry, plus the mismatch
    /// with the prescribed initial value; all zero for a correct table.
    pub fn ode_residuals(&self) -> Vec<(usize, Multidegree, ExpPoly, TauScalar)> {
        let mut out = Vec::new();
        for j in 0..2 {
            let tau = TauScalar::tau();
            for (m, e) in &self.entries[j] {
                let r = e
                    .coefficient
                    .derivative()
                    .add(&e.coefficient.scale(&tau.scale_int(self.m[j])))
                    .sub(&e.forcing.scale(&tau));
                let r0 = &e.coefficient.eval_at_zero() - &e.initial;
                out.push((j, *m, r, r0));
            }
        }
        out
    }

    fn series(&self, j: usize) -> ExpSeries {
        let mut s = ExpSeries::zero(self.order);
        for (m, e) in &self.entries[j] {
            s.add_term(*m, &e.coefficient);
        }
        s
    }

    /// `∂Γ_j/∂t − τ·Y_j(Γ, γ)` for the normalised field; identically zero
    /// up to the table order when the lifting equations are satisfied.
    pub fn system_residual(&self, nf: &HolonomyNormalForm) -> [bool; 2] {
        let y = nf.field();
        let g1 = self.series(0);
        let g2 = self.series(1);
        let tau = ExpPoly::constant(TauScalar::tau());
        let mut ok = [false; 2];
        for j in 0..2 {
            let rhs = substitute_lift(y.component(j), &g1, &g2, self.order).scale(&tau);
            let lhs = if j == 0 { g1.derivative() } else { g2.derivative() };
            let diff = lhs.add(&rhs.scale(&ExpPoly::constant(TauScalar::from_int(-1))));
            ok[j] = diff.coeffs.is_empty();
        }
        ok
    }

    /// The time-one map `(x₁, x₂) ↦ Γ(1, x₁, x₂)`.
    pub fn at_one(&self) -> Result<DiffeoGerm> {
        let comps = (0..2)
            .map(|j| {
                TruncatedSeries::from_terms(
                    2,
                    self.order,
                    self.entries[j]
                        .iter()
                        .map(|(m, e)| (*m, e.coefficient.eval_at_one())),
                )
            })
            .collect();
        DiffeoGerm::new(comps)
    }
}

/// Solves the lifting equations degree by degree up to transverse order
/// `order`.
pub fn lift_coefficients(nf: &HolonomyNormalForm, order: u32) -> Result<LiftTable> {
    if order == 0 {
        return Err(Error::InvalidArgument("order must be at least 1".into()));
    }
    if nf.axis_series {
        return Err(Error::NotPolynomialInAxisVariable);
    }
    if nf.m1 <= 0 || nf.m2 <= 0 {
        return Err(Error::NonIntegerRatio(format!("-{} / -{}", nf.m1, nf.m2)));
    }
    let on_axis = |s: &TruncatedSeries| s.terms().any(|(m, _)| m.get(0) == 0 && m.get(1) == 0);
    if on_axis(&nf.a1) || on_axis(&nf.a2) {
        return Err(Error::UnsupportedCoupling(
            "diagonal coefficient varies along the axis".into(),
        ));
    }
    let y = nf.field();
    let nonlinear = |j: usize, m: i64| {
        let lin = TruncatedSeries::var(3, y.order(), j).scale_int(m);
        y.component(j).add(&lin).expect("dimension 3")
    };
    let n1 = nonlinear(0, nf.m1);
    let n2 = nonlinear(1, nf.m2);

    let mut table = LiftTable {
        order,
        m: [nf.m1, nf.m2],
        entries: [BTreeMap::new(), BTreeMap::new()],
    };
    for d in 1..=order {
        for (j, nj) in [(1usize, &n2), (0usize, &n1)] {
            let g1 = table.series(0);
            let g2 = table.series(1);
            let rhs = substitute_lift(nj, &g1, &g2, d);
            for a in (0..=d).rev() {
                let m = Multidegree::new(&[a, d - a]);
                let forcing = rhs.coeffs.get(&m).cloned().unwrap_or_default();
                let initial = if m == Multidegree::unit(2, j) {
                    TauScalar::one()
                } else {
                    TauScalar::zero()
                };
                let c = ode_solve(table.m[j], &forcing, &initial);
                if !c.is_zero() {
                    table.entries[j].insert(
                        m,
                        LiftEntry {
                            coefficient: c,
                            forcing,
                            initial,
                        },
                    );
                }
            }
        }
    }
    Ok(table)
}

/// Generator of the holonomy around `axis`, on the section `x_axis = 1`,
/// in the remaining coordinates taken in increasing index order.
pub fn holonomy_generator(x: &VectorFieldGerm, axis: usize, order: u32) -> Result<DiffeoGerm> {
    let nf = normalize_axis(x, axis)?;
    let table = lift_coefficients(&nf, order)?;
    let h = table.at_one()?;
    if nf.transverse[0] > nf.transverse[1] {
        Ok(h.permute(&[1, 0]))
    } else {
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau_inv() -> TauScalar {
        TauScalar::tau_pow(-1)
    }

    fn mono(order: u32, e: &[u32], c: TauScalar) -> TruncatedSeries {
        TruncatedSeries::monomial(e.len(), order, e, c)
    }

    fn int(n: i64) -> TauScalar {
        TauScalar::from_int(n)
    }

    /// `−(x₁ + x₂² b(x₃))∂₁ − 3x₂∂₂ + x₃∂₃` with `b(z) = c·z^l`.
    fn quadratic_coupling_field(c: TauScalar, l: u32, order: u32) -> VectorFieldGerm {
        VectorFieldGerm::new(vec![
            mono(order, &[1, 0, 0], int(-1)).add(&mono(order, &[0, 2, l], -c)).unwrap(),
            mono(order, &[0, 1, 0], int(-3)),
            mono(order, &[0, 0, 1], int(1)),
        ])
        .unwrap()
    }

    #[test]
    fn ode_resonant_case() {
        // b(z) = −z²/τ gives forcing τ⁻¹ e^{−2πit} at m = 1
        let f = ExpPoly::term(-1, vec![tau_inv()]);
        let c = ode_solve(1, &f, &TauScalar::zero());
        assert_eq!(c, ExpPoly::term(-1, vec![TauScalar::zero(), int(1)]));
        assert_eq!(c.eval_at_one(), int(1));
    }

    #[test]
    fn ode_homogeneous_and_constant_forcing() {
        let c = ode_solve(2, &ExpPoly::zero(), &int(1));
        assert_eq!(c, ExpPoly::exp(-2));
        assert_eq!(c.eval_at_one(), int(1));
        let c = ode_solve(1, &ExpPoly::constant(int(1)), &TauScalar::zero());
        assert_eq!(c, ExpPoly::constant(int(1)).sub(&ExpPoly::exp(-1)));
        assert!(c.eval_at_one().is_zero());
    }

    #[test]
    fn evaluation_at_one() {
        let t_exp = ExpPoly::term(-1, vec![TauScalar::zero(), int(1)]);
        assert_eq!(eval_at_one(&t_exp), int(1));
        assert_eq!(eval_at_one(&ExpPoly::exp(-3)), int(1));
        let p = ExpPoly::term(2, vec![TauScalar::zero(), int(1), TauScalar::tau()]);
        assert_eq!(eval_at_one(&p), &TauScalar::tau() + &int(1));
    }

    #[test]
    fn normal_form_of_main_field() {
        let x = quadratic_coupling_field(-tau_inv(), 2, 6);
        let nf = normalize_axis(&x, 2).unwrap();
        assert_eq!((nf.m1, nf.m2), (1, 3));
        assert!(nf.a1.is_zero() && nf.a2.is_zero());
        assert_eq!(nf.b1, mono(6, &[0, 1, 2], -tau_inv()));
        assert_eq!(nf.transverse, [0, 1]);
    }

    #[test]
    fn normal_form_divides_out_axis_unit() {
        let order = 6;
        let x = VectorFieldGerm::new(vec![
            mono(order, &[1, 0, 0], int(-1)),
            mono(order, &[0, 1, 0], int(-3)),
            mono(order, &[0, 0, 1], int(1)).add(&mono(order, &[0, 0, 2], int(1))).unwrap(),
        ])
        .unwrap();
        let nf = normalize_axis(&x, 2).unwrap();
        assert!(nf.axis_series);
        assert!(crate::germs::is_tangent(&x, &nf.field()));
        assert_eq!(nf.field().component(2), &mono(order, &[0, 0, 1], int(1)));
        assert_eq!(lift_coefficients(&nf, 3), Err(Error::NotPolynomialInAxisVariable));
    }

    #[test]
    fn non_integer_ratio() {
        let x = VectorFieldGerm::linear_diagonal(&[int(-1), int(-3), int(2)], 3);
        assert!(matches!(normalize_axis(&x, 2), Err(Error::NonIntegerRatio(_))));
    }

    #[test]
    fn wrong_axis_or_no_star() {
        let x = VectorFieldGerm::linear_diagonal(&[int(-1), int(-3), int(1)], 3);
        assert!(matches!(normalize_axis(&x, 0), Err(Error::NotStarGerm(_))));
        let x = VectorFieldGerm::linear_diagonal(&[int(1), int(2), int(3)], 3);
        assert!(matches!(normalize_axis(&x, 2), Err(Error::NotStarGerm(_))));
    }

    #[test]
    fn both_cross_terms_unsupported() {
        let o = 4;
        let x = VectorFieldGerm::new(vec![
            mono(o, &[1, 0, 0], int(-1)).add(&mono(o, &[0, 1, 1], int(1))).unwrap(),
            mono(o, &[0, 1, 0], int(-2)).add(&mono(o, &[1, 0, 1], int(1))).unwrap(),
            mono(o, &[0, 0, 1], int(1)),
        ])
        .unwrap();
        assert!(matches!(normalize_axis(&x, 2), Err(Error::UnsupportedCoupling(_))));
    }

    #[test]
    fn quadratic_cross_term_at_resonant_power() {
        let x = quadratic_coupling_field(-tau_inv(), 5, 8);
        let nf = normalize_axis(&x, 2).unwrap();
        let t = lift_coefficients(&nf, 4).unwrap();
        assert_eq!(t.coefficient(1, [0, 1]), ExpPoly::exp(-3));
        assert_eq!(t.entries(1).count(), 1);
        assert_eq!(t.coefficient(0, [1, 0]), ExpPoly::exp(-1));
        assert_eq!(
            t.coefficient(0, [0, 2]),
            ExpPoly::term(-1, vec![TauScalar::zero(), int(1)])
        );
        assert_eq!(t.entries(0).find(|(m, _)| m.exps() == [0, 2]).unwrap().1.forcing, ExpPoly::term(-1, vec![tau_inv()]));
        assert_eq!(t.entries(0).count(), 2);
        assert_eq!(t.system_residual(&nf), [true, true]);
        let h = t.at_one().unwrap();
        assert_eq!(h.render(&["x1", "x2"]), vec!["x1 + x2^2", "x2"]);
    }

    #[test]
    fn non_resonant_cross_term_leaves_identity() {
        // Γ₂² γ² oscillates at frequency −4, away from the resonance at −1
        let x = quadratic_coupling_field(-tau_inv(), 2, 6);
        let nf = normalize_axis(&x, 2).unwrap();
        let t = lift_coefficients(&nf, 4).unwrap();
        let c = t.coefficient(0, [0, 2]);
        assert_eq!(c.poly(-4), &[TauScalar::monomial(GaussianRational::from_ratio(-1, 3), -1)]);
        assert!(c.eval_at_one().is_zero());
        assert!(t.at_one().unwrap().is_identity());
    }

    #[test]
    fn linear_field_has_trivial_holonomy() {
        let x = VectorFieldGerm::linear_diagonal(&[int(-1), int(-3), int(1)], 6);
        let nf = normalize_axis(&x, 2).unwrap();
        let t = lift_coefficients(&nf, 5).unwrap();
        assert_eq!(t.coefficient(0, [1, 0]), ExpPoly::exp(-1));
        assert_eq!(t.coefficient(1, [0, 1]), ExpPoly::exp(-3));
        assert_eq!(t.entries(0).count() + t.entries(1).count(), 2);
        assert!(holonomy_generator(&x, 2, 5).unwrap().is_identity());
    }

    #[test]
    fn swapped_transverse_roles() {
        // cross term sits in the second component: x₂ plays the role of x₁
        let o = 8;
        let x = VectorFieldGerm::new(vec![
            mono(o, &[1, 0, 0], int(-3)),
            mono(o, &[0, 1, 0], int(-1)).add(&mono(o, &[2, 0, 5], tau_inv())).unwrap(),
            mono(o, &[0, 0, 1], int(1)),
        ])
        .unwrap();
        let nf = normalize_axis(&x, 2).unwrap();
        assert_eq!(nf.transverse, [1, 0]);
        let h = holonomy_generator(&x, 2, 4).unwrap();
        assert_eq!(h.to_string(), "(x, y + x^2)");
    }
}
