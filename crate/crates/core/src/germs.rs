//! Vector-field germs and map germs as dynamical objects.
//!
//! Covers eigen-structure of generic germs, condition (⋆) and the
//! distinguished axis, tangency of vector fields, iteration and formal
//! periodicity of map germs, exact orbit counting on a polydisc, and the
//! exponential/logarithm correspondence between formal vector fields of
//! order ≥ 2 and map germs tangent to the identity.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::scalars::{GaussianRational, TauScalar};
use crate::series::{
    compose_map, default_names, invert, DiffeoGerm, Matrix, Multidegree, TruncatedSeries,
};

/// A germ of a holomorphic vector field `Σ X_i ∂/∂x_i` singular at 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VectorFieldGerm {
    components: Vec<TruncatedSeries>,
}

impl VectorFieldGerm {
    pub fn new(components: Vec<TruncatedSeries>) -> Result<Self> {
        let n = components.len();
        if !(2..=3).contains(&n) {
            return Err(Error::InvalidArgument(format!(
                "vector field of dimension {n}; expected 2 or 3"
            )));
        }
        let order = components.iter().map(|c| c.order()).min().unwrap_or(0);
        let mut comps = Vec::with_capacity(n);
        for c in components {
            if c.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: c.dim(),
                });
            }
            if !c.constant_term().is_zero() {
                return Err(Error::InvalidArgument(
                    "vector field must vanish at the origin".into(),
                ));
            }
            comps.push(c.truncate(order));
        }
        Ok(VectorFieldGerm { components: comps })
    }

    pub fn zero(dim: usize, order: u32) -> Self {
        VectorFieldGerm {
            components: vec![TruncatedSeries::zero(dim, order); dim],
        }
    }

    /// The diagonal linear field `Σ λ_i x_i ∂/∂x_i`.
    pub fn linear_diagonal(eigs: &[TauScalar], order: u32) -> Self {
        let n = eigs.len();
        VectorFieldGerm {
            components: (0..n)
                .map(|i| TruncatedSeries::var(n, order, i).scale(&eigs[i]))
                .collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn order(&self) -> u32 {
        self.components[0].order()
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &TruncatedSeries {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    pub fn with_order(&self, order: u32) -> Self {
        VectorFieldGerm {
            components: self.components.iter().map(|c| c.with_order(order)).collect(),
        }
    }

    pub fn truncate(&self, order: u32) -> Self {
        VectorFieldGerm {
            components: self.components.iter().map(|c| c.truncate(order)).collect(),
        }
    }

    /// `L[i][j]` = coefficient of `x_j` in `X_i`.
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

    pub fn is_linear(&self) -> bool {
        self.components
            .iter()
            .all(|c| c.terms().all(|(m, _)| m.total() == 1))
    }

    /// Lowest degree among all components (`None` for the zero field).
    pub fn valuation(&self) -> Option<u32> {
        self.components.iter().filter_map(|c| c.valuation()).min()
    }

    /// Non-degenerate generic in the given coordinates: diagonal linear
    /// part with nonzero entries, and each coordinate hyperplane invariant
    /// (`X_i` vanishes on `{x_i = 0}`).
    pub fn is_generic(&self) -> bool {
        if eigen_data(self).is_err() {
            return false;
        }
        self.components
            .iter()
            .enumerate()
            .all(|(i, c)| c.terms().all(|(m, _)| m.get(i) >= 1))
    }

    /// `u·X`.
    pub fn scale_by(&self, u: &TruncatedSeries) -> Result<Self> {
        let comps = self
            .components
            .iter()
            .map(|c| c.mul(u))
            .collect::<Result<Vec<_>>>()?;
        VectorFieldGerm::new(comps)
    }

    pub fn scale(&self, c: &TauScalar) -> Self {
        VectorFieldGerm {
            components: self.components.iter().map(|s| s.scale(c)).collect(),
        }
    }

    pub fn add(&self, other: &VectorFieldGerm) -> Result<Self> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let comps = self
            .components
            .iter()
            .zip(&other.components)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorFieldGerm { components: comps })
    }

    /// `X(f) = Σ X_i ∂f/∂x_i`, at order `min(order(X), order(f) − 1)`.
    pub fn derive(&self, f: &TruncatedSeries) -> Result<TruncatedSeries> {
        if f.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: f.dim(),
            });
        }
        let order = self.order().min(f.order().saturating_sub(1));
        let mut acc = TruncatedSeries::zero(self.dim(), order);
        for (i, xi) in self.components.iter().enumerate() {
            acc = acc.add(&xi.mul(&f.partial(i))?)?;
        }
        Ok(acc)
    }

    /// `X(f)` keeping `order(f)`; exact because `X` vanishes at the origin.
    pub(crate) fn lie_derivative(&self, f: &TruncatedSeries) -> TruncatedSeries {
        let mut acc = TruncatedSeries::zero(self.dim(), f.order());
        for (i, xi) in self.components.iter().enumerate() {
            let xi = xi.with_order(f.order());
            acc = acc
                .add(&xi.mul(&f.raw_partial(i)).expect("same dimension"))
                .expect("same dimension");
        }
        acc
    }

    pub fn render(&self, names: &[&str]) -> String {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| format!("({}) d/d{}", c.render(names), names[i]))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl fmt::Display for VectorFieldGerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render(default_names(self.dim())))
    }
}

/// Eigenvalues of a diagonal linear part, one per coordinate axis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenData {
    pub eigenvalues: Vec<GaussianRational>,
    pub axis_indices: Vec<usize>,
}

/// Outcome of the condition (⋆) test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarVerdict {
    pub holds: bool,
    pub isolated_index: Option<usize>,
    pub line_direction: Option<GaussianRational>,
}

/// Reads the eigenvalues off a diagonal linear part.
pub fn eigen_data(x: &VectorFieldGerm) -> Result<EigenData> {
    let l = x.linear_part();
    let n = x.dim();
    let mut eigs = Vec::with_capacity(n);
    for i in 0..n {
        for j in 0..n {
            if i != j && !l[i][j].is_zero() {
                let names = default_names(n);
                return Err(Error::NotDiagonal(format!(
                    "term {}*{} in component {}",
                    l[i][j], names[j], i
                )));
            }
        }
        let e = l[i][i].as_gaussian().ok_or(Error::TauDependent)?;
        if e.is_zero() {
            return Err(Error::Degenerate(format!("zero eigenvalue on axis {i}")));
        }
        eigs.push(e);
    }
    Ok(EigenData {
        eigenvalues: eigs,
        axis_indices: (0..n).collect(),
    })
}

/// Normalised generator of the real line through `z`.
fn line_generator(z: &GaussianRational) -> GaussianRational {
    let s = if !z.re().is_zero() {
        z.re().abs()
    } else {
        z.im().abs()
    };
    let mut d = z.scale(&s.recip());
    if d.re().is_negative() || (d.re().is_zero() && d.im().is_negative()) {
        d = -d;
    }
    d
}

/// Condition (⋆): all eigenvalues on one real line through 0, with both
/// half-lines occupied.
pub fn condition_star(e: &EigenData) -> Result<StarVerdict> {
    let eigs = &e.eigenvalues;
    if let Some(k) = eigs.iter().position(|z| z.is_zero()) {
        return Err(Error::Degenerate(format!("zero eigenvalue on axis {k}")));
    }
    let fail = StarVerdict {
        holds: false,
        isolated_index: None,
        line_direction: None,
    };
    let Some(first) = eigs.first() else {
        return Ok(fail);
    };
    let mut ratios = Vec::with_capacity(eigs.len());
    for z in eigs {
        match z.real_ratio(first) {
            Some(r) => ratios.push(r),
            None => return Ok(fail),
        }
    }
    let dir = line_generator(first);
    let pos: Vec<usize> = (0..eigs.len()).filter(|&k| ratios[k].is_positive()).collect();
    let neg: Vec<usize> = (0..eigs.len()).filter(|&k| ratios[k].is_negative()).collect();
    if pos.is_empty() || neg.is_empty() {
        return Ok(StarVerdict {
            holds: false,
            isolated_index: None,
            line_direction: Some(dir),
        });
    }
    let isolated = match (pos.len(), neg.len()) {
        (1, n) if n >= 2 => Some(pos[0]),
        (p, 1) if p >= 2 => Some(neg[0]),
        _ => None,
    };
    Ok(StarVerdict {
        holds: true,
        isolated_index: isolated,
        line_direction: Some(dir),
    })
}

/// Whether `Y = u·X` for a unit `u`, decided up to the common order.
pub fn is_tangent(x: &VectorFieldGerm, y: &VectorFieldGerm) -> bool {
    if x.dim() != y.dim() {
        return false;
    }
    let order = x.order().min(y.order());
    let xs: Vec<TruncatedSeries> = x.components.iter().map(|c| c.truncate(order)).collect();
    let ys: Vec<TruncatedSeries> = y.components.iter().map(|c| c.truncate(order)).collect();
    let n = x.dim();
    for i in 0..n {
        for j in (i + 1)..n {
            let minor = xs[i]
                .mul(&ys[j])
                .and_then(|a| xs[j].mul(&ys[i]).and_then(|b| a.sub(&b)));
            match minor {
                Ok(m) if m.is_zero() => {}
                _ => return false,
            }
        }
    }
    // Lowest-degree parts must agree up to one common nonzero constant.
    let mut reference: Option<(TauScalar, TauScalar)> = None;
    for i in 0..n {
        match (xs[i].valuation(), ys[i].valuation()) {
            (None, None) => continue,
            (Some(vx), Some(vy)) if vx == vy => {
                let lx = xs[i].homogeneous_part(vx);
                let ly = ys[i].homogeneous_part(vy);
                let (m0, a) = lx.terms().next().map(|(m, c)| (*m, c.clone())).unwrap();
                let b = ly.coeff(&m0);
                if b.is_zero() {
                    return false;
                }
                let proportional = lx
                    .terms()
                    .map(|(m, _)| *m)
                    .chain(ly.terms().map(|(m, _)| *m))
                    .all(|m| &ly.coeff(&m) * &a == &lx.coeff(&m) * &b);
                if !proportional {
                    return false;
                }
                match &reference {
                    None => reference = Some((a, b)),
                    Some((a0, b0)) => {
                        if &b * a0 != &a * b0 {
                            return false;
                        }
                    }
                }
            }
            _ => return false,
        }
    }
    reference.is_some() || (x.is_zero() && y.is_zero())
}

/// `G^{∘n}`; negative `n` iterates the inverse.
pub fn iterate(g: &DiffeoGerm, n: i64) -> Result<DiffeoGerm> {
    let base = if n < 0 { invert(g)? } else { g.clone() };
    let mut e = n.unsigned_abs();
    let mut acc = DiffeoGerm::identity(g.dim(), g.order());
    let mut pow = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = compose_map(&acc, &pow)?;
        }
        e >>= 1;
        if e > 0 {
            pow = compose_map(&pow, &pow)?;
        }
    }
    Ok(acc)
}

/// Least `p ≤ pmax` with `G^{∘p} = id` at the working order of `G`.
///
/// The verdict only speaks about the coefficients up to `order(G)`.
pub fn formal_period(g: &DiffeoGerm, pmax: u32) -> Option<u32> {
    let mut h = g.clone();
    for p in 1..=pmax {
        if h.is_identity() {
            return Some(p);
        }
        if p < pmax {
            h = compose_map(&h, g).ok()?;
        }
    }
    None
}

/// Result of an exact orbit enumeration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitCount {
    pub count: usize,
    /// `true` when the cap was reached while the orbit was still inside
    /// the polydisc.
    pub escaped: bool,
}

type Point = Vec<GaussianRational>;

fn eval_map(g: &DiffeoGerm, p: &Point) -> Result<Point> {
    g.components().iter().map(|c| eval_series(c, p)).collect()
}

/// Evaluates the stored polynomial at a Gaussian-rational point.
pub fn eval_series(f: &TruncatedSeries, p: &[GaussianRational]) -> Result<GaussianRational> {
    let mut acc = GaussianRational::zero();
    for (m, c) in f.terms() {
        let c = c.as_gaussian().ok_or(Error::TauDependent)?;
        let mut t = c;
        for (k, &e) in m.exps().iter().enumerate() {
            for _ in 0..e {
                t = &t * &p[k];
            }
        }
        acc += &t;
    }
    Ok(acc)
}

/// Counts the points of the two-sided orbit of `start` that stay in the
/// closed sup-norm polydisc of the given radius.
///
/// `G` is iterated as an exact polynomial map; the backward direction uses
/// the formal inverse truncated at `order(G)`, also as a polynomial.
pub fn orbit_cardinality(
    g: &DiffeoGerm,
    start: &[GaussianRational],
    radius: &BigRational,
    cap: usize,
) -> Result<OrbitCount> {
    if start.len() != g.dim() {
        return Err(Error::DimensionMismatch {
            expected: g.dim(),
            found: start.len(),
        });
    }
    let r2 = radius * radius;
    let inside = |p: &Point| p.iter().all(|z| z.norm_sqr() <= r2);
    let start: Point = start.to_vec();
    if !inside(&start) {
        return Ok(OrbitCount {
            count: 0,
            escaped: false,
        });
    }
    let mut seen: BTreeSet<Point> = BTreeSet::new();
    seen.insert(start.clone());
    if seen.len() >= cap {
        return Ok(OrbitCount {
            count: seen.len(),
            escaped: true,
        });
    }
    let ginv = invert(g)?;
    let mut closed = false;
    for (dir, map) in [(0, g), (1, &ginv)] {
        if dir == 1 && closed {
            break;
        }
        let mut p = start.clone();
        loop {
            p = eval_map(map, &p)?;
            if !inside(&p) {
                break;
            }
            if seen.contains(&p) {
                closed = closed || p == start;
                break;
            }
            seen.insert(p.clone());
            if seen.len() >= cap {
                return Ok(OrbitCount {
                    count: seen.len(),
                    escaped: true,
                });
            }
        }
    }
    Ok(OrbitCount {
        count: seen.len(),
        escaped: false,
    })
}

fn check_order_two(v: &VectorFieldGerm) -> Result<()> {
    if v.valuation().is_some_and(|d| d < 2) {
        return Err(Error::OrderTooLow);
    }
    Ok(())
}

/// Time-one flow of a formal vector field of order ≥ 2, by the Lie series
/// `x_i + V(x_i) + V²(x_i)/2! + …` truncated at `order`.
pub fn exp_time_one(v: &VectorFieldGerm, order: u32) -> Result<DiffeoGerm> {
    check_order_two(v)?;
    let n = v.dim();
    let v = v.with_order(order);
    let mut comps = Vec::with_capacity(n);
    for i in 0..n {
        let mut term = TruncatedSeries::var(n, order, i);
        let mut acc = term.clone();
        let mut k = 1i64;
        loop {
            term = v
                .lie_derivative(&term)
                .scale(&TauScalar::from_ratio(1, k));
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term)?;
            k += 1;
        }
        comps.push(acc);
    }
    DiffeoGerm::new(comps)
}

/// The formal vector field `V` of order ≥ 2 with `exp_time_one(V) = G`,
/// solved one degree at a time.
pub fn infinitesimal_generator(g: &DiffeoGerm, order: u32) -> Result<VectorFieldGerm> {
    if !g.has_identity_linear_part() {
        return Err(Error::NotTangentToIdentity);
    }
    let n = g.dim();
    let g = g.with_order(order);
    let mut v = VectorFieldGerm::zero(n, order);
    for d in 2..=order {
        let e = exp_time_one(&v, order)?;
        let mut comps = v.components.clone();
        for i in 0..n {
            let diff = g.component(i).sub(e.component(i))?.homogeneous_part(d);
            comps[i] = comps[i].add(&diff)?;
        }
        v = VectorFieldGerm { components: comps };
    }
    Ok(v)
}

/// Exact rational helper for tests and callers: `p/q` as a `BigRational`.
pub fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(p.into(), q.into())
}

impl EigenData {
    /// Eigenvalue of the given axis.
    pub fn eigenvalue(&self, axis: usize) -> &GaussianRational {
        &self.eigenvalues[axis]
    }

    /// `λ_k / λ_axis` for every `k`.
    pub fn ratios_to(&self, axis: usize) -> Result<Vec<GaussianRational>> {
        let base = &self.eigenvalues[axis];
        self.eigenvalues.iter().map(|z| z.checked_div(base)).collect()
    }
}

impl StarVerdict {
    pub fn holds_with_axis(&self) -> Option<usize> {
        if self.holds {
            self.isolated_index
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::compose;

    fn var(dim: usize, order: u32, i: usize) -> TruncatedSeries {
        TruncatedSeries::var(dim, order, i)
    }

    fn mono(order: u32, e: &[u32], c: i64) -> TruncatedSeries {
        TruncatedSeries::monomial(e.len(), order, e, TauScalar::from_int(c))
    }

    fn lin(eigs: &[i64], order: u32) -> VectorFieldGerm {
        let e: Vec<TauScalar> = eigs.iter().map(|&k| TauScalar::from_int(k)).collect();
        VectorFieldGerm::linear_diagonal(&e, order)
    }

    fn gi(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_parts((re, 1), (im, 1))
    }

    fn star(eigs: &[GaussianRational]) -> StarVerdict {
        condition_star(&EigenData {
            eigenvalues: eigs.to_vec(),
            axis_indices: (0..eigs.len()).collect(),
        })
        .unwrap()
    }

    fn translation(order: u32) -> DiffeoGerm {
        DiffeoGerm::new(vec![
            var(2, order, 0).add(&mono(order, &[0, 2], 1)).unwrap(),
            var(2, order, 1),
        ])
        .unwrap()
    }

    #[test]
    fn eigenvalues_of_diagonal_fields() {
        let x = lin(&[-1, -3, 1], 4);
        let e = eigen_data(&x).unwrap();
        assert_eq!(e.eigenvalues, vec![gi(-1, 0), gi(-3, 0), gi(1, 0)]);
        let x = lin(&[1, 1, 1], 4);
        assert_eq!(eigen_data(&x).unwrap().eigenvalues, vec![gi(1, 0); 3]);
    }

    #[test]
    fn off_diagonal_linear_part_is_rejected() {
        let x = VectorFieldGerm::new(vec![
            var(3, 4, 0).add(&var(3, 4, 1)).unwrap(),
            var(3, 4, 1),
            var(3, 4, 2),
        ])
        .unwrap();
        assert!(matches!(eigen_data(&x), Err(Error::NotDiagonal(_))));
        let x = lin(&[1, 0, 2], 3);
        assert!(matches!(eigen_data(&x), Err(Error::Degenerate(_))));
    }

    #[test]
    fn star_verdicts() {
        let v = star(&[gi(-1, 0), gi(-3, 0), gi(1, 0)]);
        assert!(v.holds);
        assert_eq!(v.isolated_index, Some(2));
        assert_eq!(v.line_direction, Some(gi(1, 0)));
        assert!(!star(&[gi(1, 0), gi(2, 0), gi(3, 0)]).holds);
        let v = star(&[gi(0, 2), gi(0, -1), gi(0, -3)]);
        assert!(v.holds);
        assert_eq!(v.isolated_index, Some(0));
        assert_eq!(v.line_direction, Some(gi(0, 1)));
        let v = star(&[gi(1, 0), gi(0, 1), gi(-1, 0)]);
        assert!(!v.holds);
        assert_eq!(v.line_direction, None);
        let r = condition_star(&EigenData {
            eigenvalues: vec![gi(1, 0), gi(0, 0), gi(-1, 0)],
            axis_indices: vec![0, 1, 2],
        });
        assert!(matches!(r, Err(Error::Degenerate(_))));
    }

    #[test]
    fn tangency() {
        let x = lin(&[-1, -3, 1], 5);
        let one_z = TruncatedSeries::one(3, 5).add(&var(3, 5, 2)).unwrap();
        assert!(is_tangent(&x, &x.scale_by(&one_z).unwrap()));
        assert!(!is_tangent(&x, &x.scale_by(&var(3, 5, 2)).unwrap()));
        assert!(!is_tangent(&x, &lin(&[-1, -2, 1], 5)));
        assert!(is_tangent(&x, &x.scale(&TauScalar::tau())));
    }

    #[test]
    fn iteration() {
        let g = translation(6);
        assert_eq!(iterate(&g, 3).unwrap().to_string(), "(x + 3*y^2, y)");
        assert_eq!(iterate(&g, -2).unwrap().to_string(), "(x - 2*y^2, y)");
        assert!(iterate(&g, 0).unwrap().is_identity());
        let rot = DiffeoGerm::new(vec![var(2, 4, 0).scale(&TauScalar::i()), var(2, 4, 1).neg()])
            .unwrap();
        assert!(iterate(&rot, 4).unwrap().is_identity());
    }

    #[test]
    fn periods() {
        assert_eq!(formal_period(&translation(8), 20), None);
        assert_eq!(formal_period(&DiffeoGerm::identity(2, 8), 20), Some(1));
        let rot = DiffeoGerm::new(vec![var(2, 4, 0).scale(&TauScalar::i()), var(2, 4, 1).neg()])
            .unwrap();
        assert_eq!(formal_period(&rot, 20), Some(4));
        assert_eq!(formal_period(&rot, 3), None);
    }

    #[test]
    fn orbit_counts() {
        let g = translation(4);
        let start = [gi(0, 0), GaussianRational::from_ratio(1, 3)];
        let c = orbit_cardinality(&g, &start, &ratio(1, 1), 1000).unwrap();
        assert_eq!(c, OrbitCount { count: 19, escaped: false });

        let id = DiffeoGerm::identity(2, 4);
        let c = orbit_cardinality(&id, &start, &ratio(1, 1), 1000).unwrap();
        assert_eq!(c.count, 1);

        let neg = DiffeoGerm::new(vec![var(2, 4, 0).neg(), var(2, 4, 1).neg()]).unwrap();
        let half = GaussianRational::from_ratio(1, 2);
        let c = orbit_cardinality(&neg, &[half.clone(), half], &ratio(1, 1), 1000).unwrap();
        assert_eq!(c, OrbitCount { count: 2, escaped: false });

        let c = orbit_cardinality(&g, &start, &ratio(1, 1), 5).unwrap();
        assert_eq!(c, OrbitCount { count: 5, escaped: true });
    }

    #[test]
    fn orbit_growth_law() {
        let g = translation(4);
        for m in 2..=5i64 {
            let start = [gi(0, 0), GaussianRational::from_ratio(1, m)];
            let c = orbit_cardinality(&g, &start, &ratio(1, 1), 10_000).unwrap();
            assert_eq!(c.count as i64, 2 * m * m + 1);
        }
    }

    fn remark_field(p: i64, q: i64, order: u32) -> VectorFieldGerm {
        VectorFieldGerm::new(vec![
            mono(order, &[2, 1], -q),
            mono(order, &[1, 2], p),
        ])
        .unwrap()
    }

    #[test]
    fn exp_of_translation_generator() {
        let v = VectorFieldGerm::new(vec![mono(6, &[0, 2], 1), TruncatedSeries::zero(2, 6)]).unwrap();
        assert_eq!(exp_time_one(&v, 6).unwrap(), translation(6));
        assert!(exp_time_one(&VectorFieldGerm::zero(2, 6), 6).unwrap().is_identity());
        let low = lin(&[1, 1], 4);
        assert_eq!(exp_time_one(&low, 4), Err(Error::OrderTooLow));
    }

    #[test]
    fn remark_flow_preserves_first_integral() {
        let v = remark_field(1, 1, 8);
        let phi = exp_time_one(&v, 8).unwrap();
        let f = mono(8, &[1, 1], 1);
        assert_eq!(compose(&f, &phi).unwrap(), f);
    }

    #[test]
    fn logarithms() {
        let v = infinitesimal_generator(&translation(6), 6).unwrap();
        assert_eq!(v.to_string(), "(y^2) d/dx + (0) d/dy");
        assert!(infinitesimal_generator(&DiffeoGerm::identity(2, 6), 6).unwrap().is_zero());
        let w = remark_field(1, 1, 8);
        let g = exp_time_one(&w, 8).unwrap();
        assert_eq!(infinitesimal_generator(&g, 8).unwrap(), w);
        let rot = DiffeoGerm::new(vec![var(2, 4, 0).scale_int(2), var(2, 4, 1)]).unwrap();
        assert_eq!(infinitesimal_generator(&rot, 4), Err(Error::NotTangentToIdentity));
    }

    #[test]
    fn generic_flag() {
        assert!(lin(&[-1, -3, 1], 3).is_generic());
        let x = VectorFieldGerm::new(vec![
            var(3, 4, 0).neg().add(&mono(4, &[0, 2, 2], 1)).unwrap(),
            var(3, 4, 1).scale_int(-3),
            var(3, 4, 2),
        ])
        .unwrap();
        assert!(!x.is_generic());
    }
}
