//! Truncated multivariate power series over [`TauScalar`] and map germs
//! fixing the origin.
//!
//! Truncation is by total degree: a series of order `N` stores the terms of
//! total degree `≤ N` and every operation discards whatever lands above the
//! order of its result.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, TauScalar};

pub const MAX_DIM: usize = 3;

/// Exponent tuple of a monomial in up to three variables.
///
/// Ordered by total degree, then lexicographically with earlier variables
/// ranking first (`x < y < x² < xy < y²`).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Multidegree {
    exps: [u32; MAX_DIM],
    dim: u8,
}

impl Multidegree {
    pub fn new(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_DIM, "at most {MAX_DIM} variables");
        let mut e = [0; MAX_DIM];
        e[..exps.len()].copy_from_slice(exps);
        Multidegree {
            exps: e,
            dim: exps.len() as u8,
        }
    }

    pub fn zero(dim: usize) -> Self {
        Self::new(&vec![0; dim])
    }

    /// The exponent of the `var`-th coordinate function.
    pub fn unit(dim: usize, var: usize) -> Self {
        let mut e = vec![0; dim];
        e[var] = 1;
        Self::new(&e)
    }

    pub fn dim(&self) -> usize {
        self.dim as usize
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps[..self.dim as usize]
    }

    pub fn get(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn total(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn add(&self, other: &Multidegree) -> Multidegree {
        let mut r = *self;
        for k in 0..MAX_DIM {
            r.exps[k] += other.exps[k];
        }
        r
    }

    pub fn with(&self, var: usize, e: u32) -> Multidegree {
        let mut r = *self;
        r.exps[var] = e;
        r
    }

    pub fn divides(&self, other: &Multidegree) -> bool {
        (0..MAX_DIM).all(|k| self.exps[k] <= other.exps[k])
    }
}

impl Ord for Multidegree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| other.exps.cmp(&self.exps))
            .then_with(|| self.dim.cmp(&other.dim))
    }
}

impl PartialOrd for Multidegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Default variable names for a given dimension.
pub fn default_names(dim: usize) -> &'static [&'static str] {
    match dim {
        1 => &["x"],
        2 => &["x", "y"],
        _ => &["x", "y", "z"],
    }
}

pub fn render_monomial(m: &Multidegree, names: &[&str]) -> String {
    let mut parts = Vec::new();
    for (k, &e) in m.exps().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[k].to_string()),
            _ => parts.push(format!("{}^{}", names[k], e)),
        }
    }
    parts.join("*")
}

/// A power series in `dim` variables known up to total degree `order`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruncatedSeries {
    dim: usize,
    order: u32,
    coeffs: BTreeMap<Multidegree, TauScalar>,
}

impl TruncatedSeries {
    pub fn zero(dim: usize, order: u32) -> Self {
        assert!((1..=MAX_DIM).contains(&dim), "dimension must be 1..=3");
        TruncatedSeries {
            dim,
            order,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, order: u32, c: TauScalar) -> Self {
        let mut s = Self::zero(dim, order);
        s.add_term(Multidegree::zero(dim), &c);
        s
    }

    pub fn one(dim: usize, order: u32) -> Self {
        Self::constant(dim, order, TauScalar::one())
    }

    /// The coordinate function `x_var`.
    pub fn var(dim: usize, order: u32, var: usize) -> Self {
        assert!(var < dim);
        Self::monomial(dim, order, Multidegree::unit(dim, var).exps(), TauScalar::one())
    }

    pub fn monomial(dim: usize, order: u32, exps: &[u32], c: TauScalar) -> Self {
        assert_eq!(exps.len(), dim);
        let mut s = Self::zero(dim, order);
        s.add_term(Multidegree::new(exps), &c);
        s
    }

    pub fn from_terms<I>(dim: usize, order: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (Multidegree, TauScalar)>,
    {
        let mut s = Self::zero(dim, order);
        for (m, c) in terms {
            s.add_term(m, &c);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Multidegree, &TauScalar)> {
        self.coeffs.iter()
    }

    pub fn coeff(&self, m: &Multidegree) -> TauScalar {
        self.coeffs.get(m).cloned().unwrap_or_else(TauScalar::zero)
    }

    pub fn coeff_of(&self, exps: &[u32]) -> TauScalar {
        self.coeff(&Multidegree::new(exps))
    }

    pub fn constant_term(&self) -> TauScalar {
        self.coeff(&Multidegree::zero(self.dim))
    }

    /// Adds `c·x^m`, silently dropping terms above the order.
    pub fn add_term(&mut self, m: Multidegree, c: &TauScalar) {
        debug_assert_eq!(m.dim(), self.dim);
        if c.is_zero() || m.total() > self.order {
            return;
        }
        let entry = self.coeffs.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&m);
        }
    }

    /// Lowest total degree carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<u32> {
        self.coeffs.keys().next().map(|m| m.total())
    }

    /// Highest total degree carrying a nonzero coefficient.
    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|m| m.total()).max()
    }

    pub fn homogeneous_part(&self, d: u32) -> TruncatedSeries {
        self.filter(|m| m.total() == d)
    }

    pub fn filter<F: Fn(&Multidegree) -> bool>(&self, keep: F) -> TruncatedSeries {
        TruncatedSeries {
            dim: self.dim,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Drop terms above `order` and lower the stated order to it.
    pub fn truncate(&self, order: u32) -> TruncatedSeries {
        let order = order.min(self.order);
        let mut s = self.filter(|m| m.total() <= order);
        s.order = order;
        s
    }

    /// Treat the stored terms as an exact polynomial and restate it at
    /// `order` (terms above `order` are dropped).
    pub fn with_order(&self, order: u32) -> TruncatedSeries {
        let mut s = self.filter(|m| m.total() <= order);
        s.order = order;
        s
    }

    fn check_dim(&self, other: &TruncatedSeries) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_dim(other)?;
        let mut r = self.truncate(self.order.min(other.order));
        for (m, c) in &other.coeffs {
            r.add_term(*m, c);
        }
        Ok(r)
    }

    pub fn sub(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TruncatedSeries {
        TruncatedSeries {
            dim: self.dim,
            order: self.order,
            coeffs: self.coeffs.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_dim(other)?;
        let order = self.order.min(other.order);
        let mut r = TruncatedSeries::zero(self.dim, order);
        for (ma, ca) in &self.coeffs {
            let da = ma.total();
            if da > order {
                break;
            }
            for (mb, cb) in &other.coeffs {
                if da + mb.total() > order {
                    break;
                }
                r.add_term(ma.add(mb), &(ca * cb));
            }
        }
        Ok(r)
    }

    pub fn scale(&self, c: &TauScalar) -> TruncatedSeries {
        if c.is_zero() {
            return TruncatedSeries::zero(self.dim, self.order);
        }
        TruncatedSeries {
            dim: self.dim,
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .map(|(m, v)| (*m, v * c))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> TruncatedSeries {
        self.scale(&TauScalar::from_int(n))
    }

    pub fn pow(&self, n: u32) -> TruncatedSeries {
        let mut acc = TruncatedSeries::one(self.dim, self.order);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("same dimension");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same dimension");
            }
        }
        acc
    }

    /// Multiply by the monomial `x^m` (order unchanged, overflow dropped).
    pub fn shift(&self, m: &Multidegree) -> TruncatedSeries {
        let mut r = TruncatedSeries::zero(self.dim, self.order);
        for (k, c) in &self.coeffs {
            r.add_term(k.add(m), c);
        }
        r
    }

    /// Exact division by the monomial `x^m`, if every term is divisible.
    pub fn div_monomial(&self, m: &Multidegree) -> Option<TruncatedSeries> {
        let mut r = TruncatedSeries::zero(self.dim, self.order.saturating_sub(m.total()));
        for (k, c) in &self.coeffs {
            if !m.divides(k) {
                return None;
            }
            let mut e = *k;
            for v in 0..MAX_DIM {
                e.exps[v] -= m.exps[v];
            }
            r.add_term(e, c);
        }
        Some(r)
    }

    /// Greatest monomial dividing every term (`None` for the zero series).
    pub fn monomial_content(&self) -> Option<Multidegree> {
        let mut it = self.coeffs.keys();
        let first = *it.next()?;
        Some(it.fold(first, |mut acc, m| {
            for v in 0..MAX_DIM {
                acc.exps[v] = acc.exps[v].min(m.exps[v]);
            }
            acc
        }))
    }

    /// Partial derivative in `var`; the order drops by one.
    pub fn partial(&self, var: usize) -> TruncatedSeries {
        let mut d = self.raw_partial(var);
        d.order = self.order.saturating_sub(1);
        d.coeffs.retain(|m, _| m.total() <= d.order);
        d
    }

    /// Term-by-term derivative keeping the stated order; only meaningful
    /// when the caller multiplies it by something vanishing at the origin.
    pub(crate) fn raw_partial(&self, var: usize) -> TruncatedSeries {
        assert!(var < self.dim);
        let mut r = TruncatedSeries::zero(self.dim, self.order);
        for (m, c) in &self.coeffs {
            let e = m.get(var);
            if e == 0 {
                continue;
            }
            r.add_term(m.with(var, e - 1), &c.scale_int(e as i64));
        }
        r
    }

    /// Inverse of a series with invertible constant term, at the same order.
    pub fn reciprocal(&self) -> Result<TruncatedSeries> {
        let c0 = self.constant_term();
        let c0_inv = TauScalar::one().divide(&c0)?;
        // 1/(c0(1 + r)) = c0⁻¹ Σ (−r)^k
        let r = self
            .filter(|m| m.total() > 0)
            .scale(&c0_inv)
            .neg();
        let mut acc = TruncatedSeries::one(self.dim, self.order);
        let mut p = TruncatedSeries::one(self.dim, self.order);
        for _ in 0..self.order {
            p = p.mul(&r)?;
            if p.is_zero() {
                break;
            }
            acc = acc.add(&p)?;
        }
        Ok(acc.scale(&c0_inv))
    }

    /// Substitute the series `g[k]` for the `k`-th variable.
    ///
    /// Every `g[k]` must vanish at the origin; the result has order
    /// `min(order(self), order(g[k]))`. Evaluation is Horner-style, one
    /// variable at a time.
    pub fn substitute(&self, g: &[TruncatedSeries]) -> Result<TruncatedSeries> {
        if g.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: g.len(),
            });
        }
        let out_dim = g[0].dim;
        for gk in g {
            if gk.dim != out_dim {
                return Err(Error::DimensionMismatch {
                    expected: out_dim,
                    found: gk.dim,
                });
            }
            if !gk.constant_term().is_zero() {
                return Err(Error::InvalidArgument(
                    "substituted series must vanish at the origin".into(),
                ));
            }
        }
        let order = g.iter().map(|s| s.order).fold(self.order, u32::min);
        let terms: Vec<(Multidegree, TauScalar)> = self
            .coeffs
            .iter()
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Ok(horner(&terms, 0, g, out_dim, order))
    }

    /// Render with the given variable names.
    pub fn render(&self, names: &[&str]) -> String {
        if self.coeffs.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.coeffs.iter().enumerate() {
            let (neg, body) = c.factor_parts();
            let mono = render_monomial(m, names);
            let term = match (body.is_empty(), mono.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => mono,
                (false, true) => body,
                (false, false) => format!("{body}*{mono}"),
            };
            match (i == 0, neg) {
                (true, true) => out.push('-'),
                (true, false) => {}
                (false, true) => out.push_str(" - "),
                (false, false) => out.push_str(" + "),
            }
            out.push_str(&term);
        }
        out
    }
}

/// Horner evaluation over the variable `var`: the terms are grouped by the
/// exponent of `var` and the inner coefficients are evaluated recursively.
fn horner(
    terms: &[(Multidegree, TauScalar)],
    var: usize,
    g: &[TruncatedSeries],
    out_dim: usize,
    order: u32,
) -> TruncatedSeries {
    if var == g.len() {
        let c = terms
            .iter()
            .fold(TauScalar::zero(), |acc, (_, c)| &acc + c);
        return TruncatedSeries::constant(out_dim, order, c);
    }
    let mut groups: BTreeMap<u32, Vec<(Multidegree, TauScalar)>> = BTreeMap::new();
    for (m, c) in terms {
        groups.entry(m.get(var)).or_default().push((*m, c.clone()));
    }
    let gv = g[var].truncate(order);
    let max_e = *groups.keys().next_back().unwrap_or(&0);
    let mut acc = TruncatedSeries::zero(out_dim, order);
    for e in (0..=max_e).rev() {
        if e != max_e {
            acc = acc.mul(&gv).expect("same dimension");
        }
        if let Some(grp) = groups.get(&e) {
            let inner = horner(grp, var + 1, g, out_dim, order);
            acc = acc.add(&inner).expect("same dimension");
        }
    }
    acc
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(default_names(self.dim)))
    }
}

/// `f ∘ g` truncated at the smaller order.
pub fn compose(f: &TruncatedSeries, g: &DiffeoGerm) -> Result<TruncatedSeries> {
    if f.dim != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim,
            found: g.dim(),
        });
    }
    f.substitute(&g.components)
}

/// Square matrix over [`TauScalar`].
pub type Matrix = Vec<Vec<TauScalar>>;

pub fn determinant(m: &Matrix) -> TauScalar {
    let n = m.len();
    match n {
        0 => TauScalar::one(),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = TauScalar::zero();
            for j in 0..n {
                if m[0][j].is_zero() {
                    continue;
                }
                let minor: Matrix = (1..n)
                    .map(|r| (0..n).filter(|&c| c != j).map(|c| m[r][c].clone()).collect())
                    .collect();
                let term = &m[0][j] * &determinant(&minor);
                if j % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

/// Inverse via the adjugate; requires a determinant that is a unit of the
/// tau-ring (a single power of tau).
pub fn invert_matrix(m: &Matrix) -> Result<Matrix> {
    let n = m.len();
    let det = determinant(m);
    if det.is_zero() || det.as_monomial().is_none() {
        return Err(Error::NotInvertible);
    }
    let mut inv = vec![vec![TauScalar::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Matrix = (0..n)
                .filter(|&r| r != j)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| m[r][c].clone()).collect())
                .collect();
            let mut cof = determinant(&minor);
            if (i + j) % 2 == 1 {
                cof = -cof;
            }
            inv[i][j] = cof.divide(&det)?;
        }
    }
    Ok(inv)
}

/// A germ of a map `(C^n, 0) → (C^n, 0)` with invertible linear part.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DiffeoGerm {
    components: Vec<TruncatedSeries>,
}

impl DiffeoGerm {
    /// Validates: matching dimensions and orders, zero constant terms,
    /// invertible linear part.
    pub fn new(components: Vec<TruncatedSeries>) -> Result<Self> {
        let g = Self::new_unchecked(components)?;
        invert_matrix(&g.linear_part()).map_err(|_| Error::NotInvertible)?;
        Ok(g)
    }

    /// Like [`DiffeoGerm::new`] but skipping the invertibility check; used
    /// for polynomial maps that are iterated rather than inverted.
    pub fn new_unchecked(components: Vec<TruncatedSeries>) -> Result<Self> {
        let n = components.len();
        if n == 0 || n > MAX_DIM {
            return Err(Error::InvalidArgument(format!("map germ of dimension {n}")));
        }
        let order = components.iter().map(|c| c.order).min().unwrap_or(0);
        let mut comps = Vec::with_capacity(n);
        for c in components {
            if c.dim != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.dim,
                });
            }
            if !c.constant_term().is_zero() {
                return Err(Error::InvalidArgument(
                    "map germ must fix the origin".into(),
                ));
            }
            comps.push(c.truncate(order));
        }
        Ok(DiffeoGerm { components: comps })
    }

    pub fn identity(dim: usize, order: u32) -> Self {
        DiffeoGerm {
            components: (0..dim).map(|i| TruncatedSeries::var(dim, order, i)).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn order(&self) -> u32 {
        self.components[0].order
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &TruncatedSeries {
        &self.components[i]
    }

    pub fn into_components(self) -> Vec<TruncatedSeries> {
        self.components
    }

    /// `L[i][j]` = coefficient of `x_j` in component `i`.
    pub fn linear_part(&self) -> Matrix {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| self.components[i].coeff(&Multidegree::unit(n, j)))
                    .collect()
            })
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        *self == DiffeoGerm::identity(self.dim(), self.order())
    }

    pub fn has_identity_linear_part(&self) -> bool {
        let l = self.linear_part();
        (0..self.dim()).all(|i| {
            (0..self.dim()).all(|j| {
                if i == j {
                    l[i][j] == TauScalar::one()
                } else {
                    l[i][j].is_zero()
                }
            })
        })
    }

    pub fn truncate(&self, order: u32) -> DiffeoGerm {
        DiffeoGerm {
            components: self.components.iter().map(|c| c.truncate(order)).collect(),
        }
    }

    /// Restate the polynomial map at a different order (see
    /// [`TruncatedSeries::with_order`]).
    pub fn with_order(&self, order: u32) -> DiffeoGerm {
        DiffeoGerm {
            components: self.components.iter().map(|c| c.with_order(order)).collect(),
        }
    }

    /// Exchange the roles of coordinates according to `perm`: the result is
    /// `P⁻¹ ∘ self ∘ P` where `P` sends variable `k` to variable `perm[k]`.
    pub fn permute(&self, perm: &[usize]) -> DiffeoGerm {
        let n = self.dim();
        let order = self.order();
        let vars: Vec<TruncatedSeries> = (0..n)
            .map(|k| TruncatedSeries::var(n, order, perm[k]))
            .collect();
        let mut comps = vec![TruncatedSeries::zero(n, order); n];
        for k in 0..n {
            comps[perm[k]] = self.components[k]
                .substitute(&vars)
                .expect("permutation preserves dimension");
        }
        DiffeoGerm { components: comps }
    }

    pub fn render(&self, names: &[&str]) -> Vec<String> {
        self.components.iter().map(|c| c.render(names)).collect()
    }
}

impl fmt::Display for DiffeoGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_names(self.dim());
        write!(f, "({})", self.render(names).join(", "))
    }
}

/// `g ∘ h`.
pub fn compose_map(g: &DiffeoGerm, h: &DiffeoGerm) -> Result<DiffeoGerm> {
    if g.dim() != h.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: h.dim(),
        });
    }
    let comps = g
        .components
        .iter()
        .map(|c| c.substitute(&h.components))
        .collect::<Result<Vec<_>>>()?;
    Ok(DiffeoGerm { components: comps })
}

/// Formal inverse, by fixed-point iteration `h ← L⁻¹(y − N(h))` where
/// `g = L + N`; each pass fixes one more degree.
pub fn invert(g: &DiffeoGerm) -> Result<DiffeoGerm> {
    let n = g.dim();
    let order = g.order();
    let linv = invert_matrix(&g.linear_part())?;
    let nonlinear: Vec<TruncatedSeries> = g
        .components
        .iter()
        .map(|c| c.filter(|m| m.total() >= 2))
        .collect();
    let apply_linv = |v: &[TruncatedSeries]| -> Vec<TruncatedSeries> {
        (0..n)
            .map(|i| {
                let mut acc = TruncatedSeries::zero(n, order);
                for j in 0..n {
                    acc = acc.add(&v[j].scale(&linv[i][j])).expect("same dimension");
                }
                acc
            })
            .collect()
    };
    let ident: Vec<TruncatedSeries> = (0..n).map(|i| TruncatedSeries::var(n, order, i)).collect();
    let mut h = apply_linv(&ident);
    for _ in 1..order {
        let rhs: Vec<TruncatedSeries> = (0..n)
            .map(|i| {
                let nh = nonlinear[i].substitute(&h)?;
                ident[i].sub(&nh)
            })
            .collect::<Result<_>>()?;
        let next = apply_linv(&rhs);
        if next == h {
            break;
        }
        h = next;
    }
    Ok(DiffeoGerm { components: h })
}

/// Convenience: a Gaussian-rational constant as a [`TauScalar`].
pub fn gq(n: i64, d: i64) -> TauScalar {
    TauScalar::from(GaussianRational::from_ratio(n, d))
}
