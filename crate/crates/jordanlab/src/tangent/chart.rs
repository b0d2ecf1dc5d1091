//! Affine charts around a base pair `(o, o')` and extraction of the Jordan pair.
//!
//! With a frame `B = [basis(o) | basis(o')]`, the point of `V^+ = U_{o'}` with
//! coordinate `X` is the span of `B·[1; X]`, and the point of `V^- = U_o` with
//! coordinate `A` is the span of `B·[-A; 1]`. This orientation of `V^-` is the
//! one in which `L_o^{a o'}(x) = x^a`; transversality `x ⊤ a` then corresponds
//! to quasi-invertibility of `(x, -a)`.

use super::pair::{QuadraticJordanPair, Sign, Vector};
use super::TangentError;
use crate::geometry::{Geometry, GrasPoint, ProjectiveMap};
use crate::linalg::Matrix;
use crate::rings::{Ring, Value};

/// Geometry with a base pair `o ⊤ o'` and the induced charts.
#[derive(Debug, Clone)]
pub struct BasePair {
    geometry: Geometry,
    o: GrasPoint,
    o2: GrasPoint,
    frame: Matrix,
    frame_inv: Matrix,
}

impl BasePair {
    pub fn new(geometry: &Geometry, o: &GrasPoint, o2: &GrasPoint) -> Result<BasePair, TangentError> {
        if !geometry.transversal(o, o2) {
            return Err(TangentError::Domain("base pair needs o ⊤ o'".into()));
        }
        let frame = o.basis().hcat(o2.basis());
        let frame_inv = frame.invert()?;
        Ok(BasePair { geometry: geometry.clone(), o: o.clone(), o2: o2.clone(), frame, frame_inv })
    }

    /// Coordinate points `span(e_1..e_k)` and `span(e_{k+1}..e_n)`.
    pub fn standard(geometry: &Geometry, k: usize) -> Result<BasePair, TangentError> {
        let n = geometry.dim();
        let o = geometry.coordinate_point(&(0..k).collect::<Vec<_>>())?;
        let o2 = geometry.coordinate_point(&(k..n).collect::<Vec<_>>())?;
        BasePair::new(geometry, &o, &o2)
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }
    pub fn ring(&self) -> &Ring {
        self.geometry.ring()
    }
    pub fn o(&self) -> &GrasPoint {
        &self.o
    }
    pub fn o2(&self) -> &GrasPoint {
        &self.o2
    }
    fn k(&self) -> usize {
        self.o.rank()
    }
    fn m(&self) -> usize {
        self.o2.rank()
    }

    /// `[dim V^+, dim V^-]`.
    pub fn dims(&self) -> [usize; 2] {
        [self.k() * self.m(), self.k() * self.m()]
    }

    /// The same base pair in the geometry over `ring`.
    pub fn over(&self, ring: &Ring) -> Result<BasePair, TangentError> {
        let g = self.geometry.over(ring.clone())?;
        let src = self.ring();
        BasePair::new(&g, &g.lift(&self.o, src)?, &g.lift(&self.o2, src)?)
    }

    pub fn lift_point(&self, p: &GrasPoint, src: &Ring) -> Result<GrasPoint, TangentError> {
        Ok(self.geometry.lift(p, src)?)
    }

    pub fn point(&self, s: Sign, v: &[Value]) -> GrasPoint {
        let r = self.ring();
        let (k, m) = (self.k(), self.m());
        let local = match s {
            Sign::Plus => Matrix::identity(r, k).vcat(&Matrix::from_values(r, m, k, v.to_vec())),
            Sign::Minus => Matrix::from_values(r, k, m, v.to_vec()).neg().vcat(&Matrix::identity(r, m)),
        };
        self.geometry.point_from_basis_unchecked(self.frame.mul(&local).canonical_span().expect("chart point"))
    }

    /// Chart coordinate of `p` in `V^σ`, if `p` lies in that chart.
    pub fn coord(&self, s: Sign, p: &GrasPoint) -> Option<Vector> {
        let (k, m) = (self.k(), self.m());
        let c = self.frame_inv.mul(p.basis());
        match s {
            Sign::Plus if p.rank() == k => {
                let inv = c.submatrix(0, k, 0, k).invert().ok()?;
                Some(c.submatrix(k, m, 0, k).mul(&inv).data().to_vec())
            }
            Sign::Minus if p.rank() == m => {
                let inv = c.submatrix(k, m, 0, m).invert().ok()?;
                Some(c.submatrix(0, k, 0, m).mul(&inv).neg().data().to_vec())
            }
            _ => None,
        }
    }

    /// Matrix of a map fixing `o` and `o'` on the chart `V^σ`.
    pub fn linear_part(&self, s: Sign, g: &ProjectiveMap) -> Option<Matrix> {
        let r = self.ring();
        let n = self.dims()[s.idx()];
        let mut cols = vec![];
        for i in 0..n {
            let e = super::pair::unit(r, n, i);
            cols.push(self.coord(s, &g.apply(&self.point(s, &e)))?);
        }
        Some(Matrix::from_columns(r, n, &cols))
    }
}

/// Reads off `Q^+(x)a` as the ε-part of `L_o^{εa,o'}(x)` and `Q^-(a)x` as the
/// ε-part of `L_{o'}^{εx,o}(a)`, in the dual-number extension.
pub fn extract_pair(base: &BasePair) -> Result<QuadraticJordanPair, TangentError> {
    let r = base.ring().clone();
    let t = r.tangent();
    let eps = t.generator(0);
    let tb = base.over(&t)?;
    let g = tb.geometry().clone();
    let lift = |v: &[Value]| -> Vector { v.iter().map(|c| t.coerce(&r, c).unwrap()).collect() };
    let f = |s: Sign, x: &[Value], a: &[Value]| -> Result<Vector, TangentError> {
        let xp = tb.point(s, &lift(x));
        let ea: Vector = lift(a).iter().map(|c| t.mul(&eps, c)).collect();
        let ap = tb.point(s.opp(), &ea);
        let (sub, dst) = match s {
            Sign::Plus => (tb.o(), tb.o2()),
            Sign::Minus => (tb.o2(), tb.o()),
        };
        let l = g.translation(sub, &ap, dst)?;
        let c = tb.coord(s, &l.apply(&xp)).ok_or_else(|| TangentError::Domain("quasi-translate left the chart".into()))?;
        Ok(c.iter().map(|v| t.coefficient(v, &[1])).collect())
    };
    QuadraticJordanPair::from_fn(&r, base.dims(), &f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chart_round_trip() {
        let g: Geometry = "gras:Fp:5:2+2".parse().unwrap();
        let b = BasePair::standard(&g, 2).unwrap();
        let r = g.ring();
        let v: Vector = [1, 2, 3, 4].iter().map(|&n| r.from_i64(n)).collect();
        for s in Sign::BOTH {
            assert_eq!(b.coord(s, &b.point(s, &v)).unwrap(), v);
        }
        assert_eq!(b.coord(Sign::Plus, b.o()).unwrap(), vec![r.zero(); 4]);
        assert_eq!(b.coord(Sign::Minus, b.o2()).unwrap(), vec![r.zero(); 4]);
        assert!(b.coord(Sign::Plus, b.o2()).is_none());
    }

    #[test]
    fn scalar_extraction() {
        let g: Geometry = "projline:Q".parse().unwrap();
        let base = BasePair::new(&g, &g.infinity(), &g.affine(&g.ring().zero())).unwrap();
        let p = extract_pair(&base).unwrap();
        assert_eq!(p, QuadraticJordanPair::scalar(g.ring()));
    }

    #[test]
    fn matrix_extraction() {
        for (ring, p, q) in [("Fp:2", 1, 2), ("Fp:3", 2, 2), ("Q", 2, 1)] {
            let g: Geometry = format!("gras:{ring}:{p}+{q}").parse().unwrap();
            let base = BasePair::standard(&g, p).unwrap();
            assert_eq!(extract_pair(&base).unwrap(), QuadraticJordanPair::matrix(g.ring(), p, q), "{ring} {p}+{q}");
        }
    }
}
