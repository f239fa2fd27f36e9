//! Plot-friendly views of convex sets on one or two variables.

use std::cmp::Ordering;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::convex::ConvexSet;
use crate::error::{Error, Result};
use crate::freemod::FinSupp;
use crate::interval::Interval;
use crate::semiring::Semiring;
use crate::symbol::Symbol;

type Point = (BigRational, BigRational);

fn require_qplus(a: &ConvexSet<Symbol>) -> Result<()> {
    if a.semiring() == Semiring::QPlus {
        Ok(())
    } else {
        Err(Error::Unsupported {
            op: "render",
            semiring: a.semiring(),
            hint: "rendering is defined over qplus",
        })
    }
}

fn check_dimension(vars: &[Symbol], expected: usize) -> Result<()> {
    if vars.len() == expected {
        Ok(())
    } else {
        Err(Error::WrongDimension {
            expected,
            found: vars.len(),
        })
    }
}

/// The interval spanned by a set on one variable.
pub fn render_interval(a: &ConvexSet<Symbol>, vars: &[Symbol]) -> Result<Interval> {
    require_qplus(a)?;
    check_dimension(vars, 1)?;
    let coords: Vec<BigRational> = a.generators().iter().map(|g| g.get(&vars[0]).to_rational()).collect();
    Ok(match (coords.iter().min(), coords.iter().max()) {
        (Some(lo), Some(hi)) => Interval::closed(lo.clone(), hi.clone()),
        _ => Interval::Empty,
    })
}

/// The vertices of a set on two variables, in counterclockwise order of
/// angle around their centroid starting from the negative x axis, with
/// collinear ties broken lexicographically.
pub fn render_polygon(a: &ConvexSet<Symbol>, vars: &[Symbol]) -> Result<Vec<FinSupp<Symbol>>> {
    require_qplus(a)?;
    check_dimension(vars, 2)?;
    let gens = a.generators();
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let xy = |g: &FinSupp<Symbol>| (g.get(&vars[0]).to_rational(), g.get(&vars[1]).to_rational());
    let n = BigRational::from_integer(gens.len().into());
    let (cx, cy) = gens.iter().map(xy).fold(
        (BigRational::zero(), BigRational::zero()),
        |(sx, sy), (x, y)| (sx + x, sy + y),
    );
    let (cx, cy) = (cx / &n, cy / &n);
    let mut keyed: Vec<(Point, Point, &FinSupp<Symbol>)> = gens
        .iter()
        .map(|g| {
            let (x, y) = xy(g);
            ((&x - &cx, &y - &cy), (x, y), g)
        })
        .collect();
    keyed.sort_by(|(da, pa, _), (db, pb, _)| by_angle(da, db).then_with(|| pa.cmp(pb)));
    Ok(keyed.into_iter().map(|(_, _, g)| g.clone()).collect())
}

/// Position of a direction in `(-π, π]`, the zero vector first.
fn half(d: &(BigRational, BigRational)) -> u8 {
    let (x, y) = d;
    match (x.signum(), y.signum()) {
        (sx, sy) if sx.is_zero() && sy.is_zero() => 0,
        (_, sy) if sy.is_negative() => 1,
        (sx, sy) if sy.is_zero() && sx.is_positive() => 2,
        (_, sy) if sy.is_positive() => 3,
        _ => 4,
    }
}

fn by_angle(a: &(BigRational, BigRational), b: &(BigRational, BigRational)) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        // within a half plane, a precedes b when b is to its left
        let cross = &a.0 * &b.1 - &a.1 * &b.0;
        if cross.is_positive() {
            Ordering::Less
        } else if cross.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

#[cfg(test)]
mod tests {
    use super::super::{eval, parse};
    use super::*;
    use crate::semiring::rat;

    fn set(text: &str, vars: &[Symbol]) -> ConvexSet<Symbol> {
        eval(&parse(text, Semiring::QPlus).unwrap(), Semiring::QPlus, vars).unwrap()
    }

    fn iv(a: i64, b: i64) -> Interval {
        Interval::closed(rat(a, 1).to_rational(), rat(b, 1).to_rational())
    }

    #[test]
    fn intervals() {
        let x = [Symbol::new("x")];
        assert_eq!(render_interval(&set("1.x | 5.x", &x), &x).unwrap(), iv(1, 5));
        assert_eq!(render_interval(&set("(1.x | 2.x) + (5.x | 6.x)", &x), &x).unwrap(), iv(6, 8));
        assert_eq!(render_interval(&set("0 | 3.x", &x), &x).unwrap(), iv(0, 3));
        assert_eq!(render_interval(&set("bot", &x), &x).unwrap(), Interval::Empty);
        let xy = [Symbol::new("x"), Symbol::new("y")];
        assert!(matches!(
            render_interval(&set("x", &xy), &xy),
            Err(Error::WrongDimension { expected: 1, found: 2 })
        ));
    }

    #[test]
    fn polygons() {
        let v = [Symbol::new("x1"), Symbol::new("x2")];
        let coords = |pts: Vec<FinSupp<Symbol>>| -> Vec<(String, String)> {
            pts.iter()
                .map(|p| (p.get(&v[0]).to_string(), p.get(&v[1]).to_string()))
                .collect()
        };
        let seg = render_polygon(&set("x1 | x2", &v), &v).unwrap();
        assert_eq!(coords(seg), vec![("1".into(), "0".into()), ("0".into(), "1".into())]);
        let tri = render_polygon(&set("x1 | x2 | (x1 + 3.x2)", &v), &v).unwrap();
        assert_eq!(
            coords(tri),
            vec![("0".into(), "1".into()), ("1".into(), "0".into()), ("1".into(), "3".into())]
        );
        let sq = render_polygon(&set("0 | 2.x1 | 2.x2 | (2.x1 + 2.x2)", &v), &v).unwrap();
        assert_eq!(
            coords(sq),
            vec![
                ("0".into(), "0".into()),
                ("2".into(), "0".into()),
                ("2".into(), "2".into()),
                ("0".into(), "2".into())
            ]
        );
    }
}
