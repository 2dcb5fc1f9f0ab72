//! Strict transforms under the blow-up of a point in the plane, and of a
//! coordinate axis in three-space.

use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::germs::VectorFieldGerm;
use crate::series::{DiffeoGerm, Multidegree, TruncatedSeries};

/// One of the two standard affine charts of the blow-up.
///
/// Chart coordinates are `(ratio, retained)`: for [`Chart::Tx`] they are
/// `(t, x)` with `(x, y) = (x, tx)`, for [`Chart::Sy`] they are `(s, y)`
/// with `(x, y) = (sy, y)`. The exceptional divisor is `{retained = 0}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Chart {
    Tx,
    Sy,
}

impl Chart {
    /// Index (0 for `x`, 1 for `y`) of the variable kept by the chart.
    pub fn retained(self) -> usize {
        match self {
            Chart::Tx => 0,
            Chart::Sy => 1,
        }
    }

    /// Original `(x, y)` as series in the chart variables `(ratio,
    /// retained)`, embedded at positions `ratio_slot`, `retained_slot` of a
    /// `dim`-dimensional coordinate system.
    fn substitution(
        self,
        dim: usize,
        order: u32,
        ratio_slot: usize,
        retained_slot: usize,
    ) -> [TruncatedSeries; 2] {
        let r = TruncatedSeries::var(dim, order, ratio_slot);
        let v = TruncatedSeries::var(dim, order, retained_slot);
        let product = r.mul(&v).expect("same dimension");
        match self {
            Chart::Tx => [v, product],
            Chart::Sy => [product, v],
        }
    }
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Chart::Tx => "t_x",
            Chart::Sy => "s_y",
        })
    }
}

impl FromStr for Chart {
    type Err = Error;

    fn from_str(s: &str) -> Result<Chart> {
        match s {
            "t_x" | "tx" => Ok(Chart::Tx),
            "s_y" | "sy" => Ok(Chart::Sy),
            _ => Err(Error::InvalidArgument(format!("unknown chart `{s}`"))),
        }
    }
}

/// Strict transform `G̃` of a plane germ in `chart`, truncated at `order`.
///
/// Writing `g_i ∘ φ = retained · G_i`, the transform is
/// `(G_other / G_retained, retained · G_retained)`. The stored terms of `g`
/// are taken as an exact polynomial.
pub fn blowup_diffeo(g: &DiffeoGerm, chart: Chart, order: u32) -> Result<DiffeoGerm> {
    if g.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: g.dim(),
        });
    }
    let lifted = order + 1;
    let phi = chart.substitution(2, lifted, 0, 1);
    let v = Multidegree::unit(2, 1);
    let keep = chart.retained();
    let quotient = |c: &TruncatedSeries| -> Result<TruncatedSeries> {
        let s = c.with_order(lifted).substitute(&phi)?;
        Ok(s.div_monomial(&v).expect("g vanishes at the origin"))
    };
    let unit = quotient(g.component(keep))?;
    let other = quotient(g.component(1 - keep))?;
    if unit.constant_term().is_zero() {
        return Err(Error::NotUnitDenominator);
    }
    let c = other.constant_term();
    if !c.is_zero() {
        return Err(Error::ChartNotInvariant(format!(
            "transformed ratio has constant term {c}"
        )));
    }
    let ratio = other.mul(&unit.reciprocal()?)?;
    let retained = unit.shift(&v).truncate(order);
    DiffeoGerm::new(vec![ratio, retained])
}

/// Pullback of a three-dimensional field under the blow-up of the
/// coordinate axis `axis`, in `chart` applied to the two other variables.
///
/// Chart coordinates keep the axis in place; the lower transverse position
/// holds the ratio variable and the higher one the retained variable, so
/// blowing up the `z`-axis in [`Chart::Tx`] gives coordinates `(t, x, z)`.
/// With `divide_common` the result is divided by the largest monomial
/// dividing every component.
pub fn blowup_vector_field_axis(
    x: &VectorFieldGerm,
    axis: usize,
    chart: Chart,
    order: u32,
    divide_common: bool,
) -> Result<VectorFieldGerm> {
    if x.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            found: x.dim(),
        });
    }
    if axis > 2 {
        return Err(Error::InvalidArgument(format!("axis index {axis}")));
    }
    let trans: Vec<usize> = (0..3).filter(|&k| k != axis).collect();
    let (ratio_slot, retained_slot) = (trans[0], trans[1]);
    let lifted = order + 1;
    let [px, py] = chart.substitution(3, lifted, ratio_slot, retained_slot);
    let mut phi = vec![TruncatedSeries::zero(3, lifted); 3];
    phi[trans[0]] = px;
    phi[trans[1]] = py;
    phi[axis] = TruncatedSeries::var(3, lifted, axis);

    let pulled: Vec<TruncatedSeries> = x
        .components()
        .iter()
        .map(|c| c.with_order(lifted).substitute(&phi))
        .collect::<Result<_>>()?;
    let keep = trans[chart.retained()];
    let other = trans[1 - chart.retained()];
    let r = TruncatedSeries::var(3, lifted, ratio_slot);
    // d(ratio)/dt = (other' − ratio · retained') / retained
    let numerator = pulled[other].sub(&r.mul(&pulled[keep])?)?;
    let ratio_dot = numerator
        .div_monomial(&Multidegree::unit(3, retained_slot))
        .ok_or_else(|| {
            Error::ChartNotInvariant("the blown-up axis is not invariant".into())
        })?;

    let mut comps = vec![TruncatedSeries::zero(3, order); 3];
    comps[ratio_slot] = ratio_dot.truncate(order);
    comps[retained_slot] = pulled[keep].truncate(order);
    comps[axis] = pulled[axis].truncate(order);

    if divide_common {
        let content = comps
            .iter()
            .filter_map(|c| c.monomial_content())
            .reduce(|a, b| {
                let e: Vec<u32> = (0..3).map(|k| a.get(k).min(b.get(k))).collect();
                Multidegree::new(&e)
            });
        if let Some(m) = content {
            comps = comps
                .iter()
                .map(|c| c.div_monomial(&m).expect("common content divides"))
                .collect();
        }
    }
    VectorFieldGerm::new(comps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::TauScalar;
    use crate::series::{compose, compose_map};

    fn mono(dim: usize, order: u32, e: &[u32], c: i64) -> TruncatedSeries {
        TruncatedSeries::monomial(dim, order, e, TauScalar::from_int(c))
    }

    fn translation(order: u32) -> DiffeoGerm {
        DiffeoGerm::new(vec![
            mono(2, order, &[1, 0], 1).add(&mono(2, order, &[0, 2], 1)).unwrap(),
            mono(2, order, &[0, 1], 1),
        ])
        .unwrap()
    }

    #[test]
    fn blowing_up_translation() {
        let g = blowup_diffeo(&translation(8), Chart::Tx, 10).unwrap();
        assert_eq!(
            g.render(&["t", "x"]),
            vec!["t - t^3*x + t^5*x^2 - t^7*x^3", "x + t^2*x^2"]
        );
    }

    #[test]
    fn transform_keeps_level_sets_of_tx() {
        let g = blowup_diffeo(&translation(8), Chart::Tx, 8).unwrap();
        let tx = mono(2, 8, &[1, 1], 1);
        assert_eq!(compose(&tx, &g).unwrap(), tx);
    }

    #[test]
    fn identity_and_homothety() {
        let id = DiffeoGerm::identity(2, 5);
        assert!(blowup_diffeo(&id, Chart::Tx, 5).unwrap().is_identity());
        assert!(blowup_diffeo(&id, Chart::Sy, 5).unwrap().is_identity());
        let h = DiffeoGerm::new(vec![mono(2, 5, &[1, 0], 2), mono(2, 5, &[0, 1], 2)]).unwrap();
        assert_eq!(blowup_diffeo(&h, Chart::Tx, 5).unwrap().to_string(), "(x, 2*y)");
    }

    #[test]
    fn chart_errors() {
        // (y, x) swaps the two directions: the x-axis is not preserved
        let swap = DiffeoGerm::new(vec![mono(2, 4, &[0, 1], 1), mono(2, 4, &[1, 0], 1)]).unwrap();
        assert!(matches!(
            blowup_diffeo(&swap, Chart::Tx, 4),
            Err(Error::NotUnitDenominator)
        ));
        let shear = DiffeoGerm::new(vec![mono(2, 4, &[1, 0], 1), mono(2, 4, &[1, 0], 1).add(&mono(2, 4, &[0, 1], 1)).unwrap()]).unwrap();
        assert!(matches!(
            blowup_diffeo(&shear, Chart::Tx, 4),
            Err(Error::ChartNotInvariant(_))
        ));
        assert!(blowup_diffeo(&shear, Chart::Sy, 4).is_ok());
    }

    #[test]
    fn conjugacy_with_composition() {
        let g = translation(7);
        let h = DiffeoGerm::new(vec![
            mono(2, 7, &[1, 0], 2).add(&mono(2, 7, &[1, 1], 1)).unwrap(),
            mono(2, 7, &[0, 1], 3).add(&mono(2, 7, &[0, 2], -1)).unwrap(),
        ])
        .unwrap();
        let gh = compose_map(&g, &h).unwrap();
        let n = 5;
        let lhs = blowup_diffeo(&gh, Chart::Tx, n).unwrap();
        let rhs = compose_map(
            &blowup_diffeo(&g, Chart::Tx, n).unwrap(),
            &blowup_diffeo(&h, Chart::Tx, n).unwrap(),
        )
        .unwrap();
        assert_eq!(lhs, rhs);
    }

    fn main_field(order: u32) -> VectorFieldGerm {
        let c = TauScalar::tau_pow(-1);
        VectorFieldGerm::new(vec![
            mono(3, order, &[1, 0, 0], -1)
                .add(&TruncatedSeries::monomial(3, order, &[0, 2, 2], c))
                .unwrap(),
            mono(3, order, &[0, 1, 0], -3),
            mono(3, order, &[0, 0, 1], 1),
        ])
        .unwrap()
    }

    #[test]
    fn blowing_up_main_field() {
        let y = blowup_vector_field_axis(&main_field(6), 2, Chart::Tx, 7, false).unwrap();
        assert_eq!(
            y.render(&["t", "x", "z"]),
            "(-2*t - tau^-1*t^3*x*z^2) d/dt + (-x + tau^-1*t^2*x^2*z^2) d/dx + (z) d/dz"
        );
    }

    #[test]
    fn blowing_up_linear_and_radial() {
        let lin = VectorFieldGerm::linear_diagonal(
            &[TauScalar::from_int(-1), TauScalar::from_int(-3), TauScalar::from_int(1)],
            4,
        );
        let y = blowup_vector_field_axis(&lin, 2, Chart::Tx, 4, false).unwrap();
        assert_eq!(y.render(&["t", "x", "z"]), "(-2*t) d/dt + (-x) d/dx + (z) d/dz");
        let radial = VectorFieldGerm::linear_diagonal(&vec![TauScalar::from_int(1); 3], 4);
        let y = blowup_vector_field_axis(&radial, 2, Chart::Tx, 4, false).unwrap();
        assert!(y.component(0).is_zero());
        assert_eq!(y.component(1), &mono(3, 4, &[0, 1, 0], 1));
    }

    #[test]
    fn pushforward_reproduces_field() {
        // Dφ · Y = X ∘ φ for φ(t, x, z) = (x, tx, z)
        let n = 6;
        let x = main_field(8);
        let y = blowup_vector_field_axis(&x, 2, Chart::Tx, n, false).unwrap();
        let phi = Chart::Tx.substitution(3, n, 0, 1);
        let phi = [phi[0].clone(), phi[1].clone(), TruncatedSeries::var(3, n, 2)];
        let t = TruncatedSeries::var(3, n, 0);
        let xv = TruncatedSeries::var(3, n, 1);
        let push = [
            y.component(1).clone(),
            xv.mul(y.component(0)).unwrap().add(&t.mul(y.component(1)).unwrap()).unwrap(),
            y.component(2).clone(),
        ];
        for k in 0..3 {
            let xs = x.component(k).with_order(n).substitute(&phi).unwrap();
            assert_eq!(push[k].truncate(n), xs, "component {k}");
        }
    }

    #[test]
    fn common_monomial_division() {
        let o = 4;
        let x = VectorFieldGerm::new(vec![
            mono(3, o, &[2, 0, 0], 1),
            mono(3, o, &[1, 1, 0], 1),
            mono(3, o, &[1, 0, 1], 1),
        ])
        .unwrap();
        // x·(x∂x + y∂y + z∂z) pulls back to x·(x∂x + z∂z)
        let y = blowup_vector_field_axis(&x, 2, Chart::Tx, o, true).unwrap();
        assert_eq!(y.render(&["t", "x", "z"]), "(0) d/dt + (x) d/dx + (z) d/dz");
        let kept = blowup_vector_field_axis(&x, 2, Chart::Tx, o, false).unwrap();
        assert_eq!(kept.render(&["t", "x", "z"]), "(0) d/dt + (x^2) d/dx + (x*z) d/dz");
    }
}
