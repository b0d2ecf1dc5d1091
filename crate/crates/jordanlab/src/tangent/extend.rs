//! Scalar extension of a geometry by a Weil algebra, the projection and
//! zero section, and tangent vectors in the extension by dual numbers.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::chart::BasePair;
use super::pair::{add, format_vector, neg, random_vector, Sign, Vector};
use super::TangentError;
use crate::geometry::{Geometry, GrasPoint};
use crate::report::{witness, CheckRecord, Witness};
use crate::rings::Ring;
use crate::sweep;

/// `X^A`: the same Grassmannian construction over a Weil algebra `A` of the
/// base ring.
#[derive(Debug, Clone)]
pub struct ExtendedGeometry {
    base: Geometry,
    ext: Geometry,
}

pub fn extend_geometry(g: &Geometry, a: &Ring) -> Result<ExtendedGeometry, TangentError> {
    if !a.is_weil() || a.base() != Some(g.ring()) {
        return Err(TangentError::Unsupported(format!("{a} is not a Weil extension of {}", g.ring())));
    }
    Ok(ExtendedGeometry { base: g.clone(), ext: g.over(a.clone())? })
}

/// A fiber point of `TX` over `point`, given by its coordinate in the chart
/// `(U_anchor, point)`.
#[derive(Debug, Clone, PartialEq)]
pub struct TangentVector {
    pub point: GrasPoint,
    pub anchor: GrasPoint,
    pub coord: Vector,
}

impl ExtendedGeometry {
    pub fn base(&self) -> &Geometry {
        &self.base
    }
    pub fn ext(&self) -> &Geometry {
        &self.ext
    }
    pub fn ring(&self) -> &Ring {
        self.ext.ring()
    }

    /// `π`: entrywise base part.
    pub fn project(&self, p: &GrasPoint) -> Result<GrasPoint, TangentError> {
        Ok(self.ext.project_point(p, &self.base)?)
    }

    /// `ζ`: the canonical lift.
    pub fn zero_section(&self, p: &GrasPoint) -> Result<GrasPoint, TangentError> {
        Ok(self.ext.lift(p, self.base.ring())?)
    }

    /// Rank of the nilradical of `A` over the base ring.
    pub fn nil_rank(&self) -> usize {
        self.ring().weil_monomials().len() - 1
    }

    /// Rank of the fiber of `π` over `x`: `rank(x)·corank(x)·nil_rank`.
    pub fn fiber_rank(&self, x: &GrasPoint) -> usize {
        x.rank() * (self.base.dim() - x.rank()) * self.nil_rank()
    }

    fn is_tangent(&self) -> bool {
        self.ring().weil_monomials() == vec![vec![0], vec![1]]
    }

    fn chart(&self, x: &GrasPoint, anchor: &GrasPoint) -> Result<BasePair, TangentError> {
        BasePair::new(&self.ext, &self.zero_section(x)?, &self.zero_section(anchor)?)
    }

    /// The point `x + εv` of `X^{TK}`.
    pub fn tangent_point(&self, t: &TangentVector) -> Result<GrasPoint, TangentError> {
        if !self.is_tangent() {
            return Err(TangentError::Unsupported("tangent vectors need the dual numbers".into()));
        }
        let r = self.ring();
        let eps = r.generator(0);
        let c = self.chart(&t.point, &t.anchor)?;
        let v: Vector = t.coord.iter().map(|x| r.mul(&eps, &r.coerce(self.base.ring(), x).expect("coerce"))).collect();
        Ok(c.point(Sign::Plus, &v))
    }

    /// Coordinate of a fiber point over `x` in the chart anchored at `anchor`.
    pub fn fiber_coord(&self, q: &GrasPoint, x: &GrasPoint, anchor: &GrasPoint) -> Result<Vector, TangentError> {
        if self.project(q)? != *x {
            return Err(TangentError::Domain("point is not over x".into()));
        }
        let c = self.chart(x, anchor)?;
        let w = c.coord(Sign::Plus, q).ok_or_else(|| TangentError::Domain("fiber point outside the chart".into()))?;
        let r = self.ring();
        Ok(w.iter().map(|v| r.coefficient(v, &[1])).collect())
    }

    pub fn reanchor(&self, t: &TangentVector, anchor: &GrasPoint) -> Result<TangentVector, TangentError> {
        let q = self.tangent_point(t)?;
        Ok(TangentVector { point: t.point.clone(), anchor: anchor.clone(), coord: self.fiber_coord(&q, &t.point, anchor)? })
    }
}

/// Ranks `(k, n-k)` of the two kinds of points used in the samples.
fn ranks(g: &Geometry) -> (usize, usize) {
    let n = g.dim();
    let k = (1..n).find(|&k| g.allows_rank(k) && g.allows_rank(n - k)).unwrap_or(1);
    (k, n - k)
}

fn label(g: &Geometry, ps: &[(&str, &GrasPoint)]) -> Witness {
    witness(ps.iter().map(|(k, p)| (k.to_string(), g.label(p))))
}

/// Morphism properties of `π` and `ζ` for `J`, `M` and scalings, on points
/// of `X^A`; for `A = T(K)` also the linearity and tangent-map contracts.
pub fn tangent_contracts(e: &ExtendedGeometry, samples: u64, seed: u64) -> Vec<CheckRecord> {
    let g = e.base();
    let x_ext = e.ext();
    let (k, l) = ranks(g);
    let mut out = vec![];
    let ok = |r: Result<bool, TangentError>| r.unwrap_or(false);

    out.push(sweep::random(
        "zero section",
        "π∘ζ = id",
        samples,
        seed,
        &mut |rng| Some(g.random_any(rng)),
        &|p| ok(e.zero_section(p).and_then(|z| e.project(&z)).map(|q| q == *p)),
        &|p| label(g, &[("x", p)]),
    ));

    let j_tuple = |rng: &mut ChaCha8Rng, geo: &Geometry| {
        let (x, a, z, y) = (geo.random_point(rng, k), geo.random_point(rng, l), geo.random_point(rng, k), geo.random_point(rng, k));
        (geo.transversal(&x, &a) && geo.transversal(&z, &a)).then_some([x, a, z, y])
    };
    out.push(sweep::random(
        "zero section morphism",
        "ζ(J^{xz}_a y) = J^{ζxζz}_{ζa} ζy",
        samples,
        seed,
        &mut |rng| j_tuple(rng, g),
        &|[x, a, z, y]| {
            ok((|| {
                let lhs = e.zero_section(&g.j(x, a, z, y)?)?;
                let zs = |p: &GrasPoint| e.zero_section(p);
                Ok(lhs == x_ext.j(&zs(x)?, &zs(a)?, &zs(z)?, &zs(y)?)?)
            })())
        },
        &|[x, a, z, y]| label(g, &[("x", x), ("a", a), ("z", z), ("y", y)]),
    ));

    let proj = |ps: &[GrasPoint]| -> Result<Vec<GrasPoint>, TangentError> { ps.iter().map(|p| e.project(p)).collect() };
    out.push(sweep::random(
        "functoriality J",
        "π(J^{xz}_a y) = J^{πx πz}_{πa} πy",
        samples,
        seed,
        &mut |rng| j_tuple(rng, x_ext),
        &|t| {
            ok((|| {
                let p = proj(t)?;
                Ok(e.project(&x_ext.j(&t[0], &t[1], &t[2], &t[3])?)? == g.j(&p[0], &p[1], &p[2], &p[3])?)
            })())
        },
        &|t| label(x_ext, &[("x", &t[0]), ("a", &t[1]), ("z", &t[2]), ("y", &t[3])]),
    ));

    out.push(sweep::random(
        "functoriality M",
        "π(M^{xz}_{ab} y) = M^{πx πz}_{πa πb} πy",
        samples,
        seed,
        &mut |rng| {
            let geo = x_ext;
            let (x, a, z, b, y) = (geo.random_point(rng, k), geo.random_point(rng, l), geo.random_point(rng, k), geo.random_point(rng, l), geo.random_point(rng, k));
            if !(geo.transversal(&x, &a) && geo.transversal(&z, &b)) {
                return None;
            }
            let img = geo.m_map(&x, &a, &z, &b).ok()?.apply(&y);
            (img.rank() == k).then_some([x, a, z, b, y])
        },
        &|t| {
            ok((|| {
                let p = proj(t)?;
                let lhs = e.project(&x_ext.m_map(&t[0], &t[1], &t[2], &t[3])?.apply(&t[4]))?;
                Ok(lhs == g.m_map(&p[0], &p[1], &p[2], &p[3])?.apply(&p[4]))
            })())
        },
        &|t| label(x_ext, &[("x", &t[0]), ("a", &t[1]), ("z", &t[2]), ("b", &t[3]), ("y", &t[4])]),
    ));

    let base_ring = g.ring().clone();
    out.push(sweep::random(
        "functoriality S",
        "π(r^a_y x) = r^{πa}_{πy} πx",
        samples,
        seed,
        &mut |rng| {
            let geo = x_ext;
            let r = base_ring.random(rng, 3);
            if !base_ring.is_unit(&r) {
                return None;
            }
            let (y, a, x) = (geo.random_point(rng, k), geo.random_point(rng, l), geo.random_point(rng, k));
            geo.transversal(&y, &a).then_some((r, [y, a, x]))
        },
        &|(r, t)| {
            ok((|| {
                let p = proj(t)?;
                let lifted = e.ring().coerce(&base_ring, r).expect("coerce");
                Ok(e.project(&x_ext.scale(&lifted, &t[0], &t[1], &t[2])?)? == g.scale(r, &p[0], &p[1], &p[2])?)
            })())
        },
        &|(r, t)| {
            let mut w = label(x_ext, &[("y", &t[0]), ("a", &t[1]), ("x", &t[2])]);
            w.insert("r".into(), base_ring.format(r).into());
            w
        },
    ));

    if e.is_tangent() {
        out.extend(linearity_contracts(e, samples, seed));
    }
    out
}

fn linearity_contracts(e: &ExtendedGeometry, samples: u64, seed: u64) -> Vec<CheckRecord> {
    let g = e.base();
    let r = g.ring().clone();
    let (k, l) = ranks(g);
    let fiber = k * l;
    let ok = |res: Result<bool, TangentError>| res.unwrap_or(false);
    let transversal_pair = |rng: &mut ChaCha8Rng| {
        let (x, c) = (g.random_point(rng, k), g.random_point(rng, l));
        g.transversal(&x, &c).then_some((x, c))
    };
    let mut out = vec![];

    out.push(sweep::random(
        "chart independence",
        "re-anchoring x + εv from U_c to U_{c'} is additive and invertible",
        samples,
        seed,
        &mut |rng| {
            let (x, c) = transversal_pair(rng)?;
            let c2 = g.random_point(rng, l);
            g.transversal(&x, &c2).then_some((x, c, c2, random_vector(&r, rng, fiber), random_vector(&r, rng, fiber)))
        },
        &|(x, c, c2, v, w)| {
            ok((|| {
                let tv = |u: &Vector| TangentVector { point: x.clone(), anchor: c.clone(), coord: u.clone() };
                let (tv_v, tv_w) = (e.reanchor(&tv(v), c2)?, e.reanchor(&tv(w), c2)?);
                let sum = e.reanchor(&tv(&add(&r, v, w)), c2)?;
                let back = e.reanchor(&tv_v, c)?;
                Ok(sum.coord == add(&r, &tv_v.coord, &tv_w.coord) && back.coord == *v && e.tangent_point(&tv_v)? == e.tangent_point(&tv(v))?)
            })())
        },
        &|(x, c, c2, v, w)| {
            let mut wt = label(g, &[("x", x), ("c", c), ("c'", c2)]);
            wt.insert("v".into(), format_vector(&r, v).into());
            wt.insert("w".into(), format_vector(&r, w).into());
            wt
        },
    ));

    out.push(sweep::random(
        "translations fix T_aX",
        "L^{xz}_a(a + εv) = a + εv",
        samples,
        seed,
        &mut |rng| {
            let a = g.random_point(rng, l);
            let (x, z, c) = (g.random_point(rng, k), g.random_point(rng, k), g.random_point(rng, k));
            (g.transversal(&x, &a) && g.transversal(&z, &a) && g.transversal(&c, &a)).then(|| (a, x, z, c, random_vector(&r, rng, fiber)))
        },
        &|(a, x, z, c, v)| {
            ok((|| {
                let q = e.tangent_point(&TangentVector { point: a.clone(), anchor: c.clone(), coord: v.clone() })?;
                let zs = |p: &GrasPoint| e.zero_section(p);
                let lt = e.ext().translation(&zs(a)?, &zs(x)?, &zs(z)?)?;
                Ok(lt.apply(&q) == q)
            })())
        },
        &|(a, x, z, c, v)| {
            let mut w = label(g, &[("a", a), ("x", x), ("z", z), ("c", c)]);
            w.insert("v".into(), format_vector(&r, v).into());
            w
        },
    ));

    out.push(sweep::random(
        "tangent of J at its fixed point",
        "J^{ab}_x(x + εv) = x - εv",
        samples,
        seed,
        &mut |rng| {
            let x = g.random_point(rng, k);
            let (a, b) = (g.random_point(rng, l), g.random_point(rng, l));
            let c = if rng.gen_bool(0.5) { a.clone() } else { g.random_point(rng, l) };
            (g.transversal(&x, &a) && g.transversal(&x, &b) && g.transversal(&x, &c)).then(|| (x, a, b, c, random_vector(&r, rng, fiber)))
        },
        &|(x, a, b, c, v)| {
            ok((|| {
                let q = e.tangent_point(&TangentVector { point: x.clone(), anchor: c.clone(), coord: v.clone() })?;
                let zs = |p: &GrasPoint| e.zero_section(p);
                let img = e.ext().j_map(&zs(a)?, &zs(x)?, &zs(b)?)?.apply(&q);
                Ok(e.fiber_coord(&img, x, c)? == neg(&r, v))
            })())
        },
        &|(x, a, b, c, v)| {
            let mut w = label(g, &[("x", x), ("a", a), ("b", b), ("c", c)]);
            w.insert("v".into(), format_vector(&r, v).into());
            w
        },
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fibers_and_errors() {
        let g: Geometry = "projline:Q".parse().unwrap();
        let t = g.ring().tangent();
        let e = extend_geometry(&g, &t).unwrap();
        assert_eq!(e.fiber_rank(&g.infinity()), 1);
        let g4: Geometry = "gras:Q:2+2".parse().unwrap();
        let e4 = extend_geometry(&g4, &g4.ring().jets("t", 2).unwrap()).unwrap();
        assert_eq!(e4.fiber_rank(&g4.random_point(&mut rand::thread_rng(), 2)), 8);
        assert!(extend_geometry(&g, &Ring::prime_field(5).unwrap()).is_err());
        assert!(extend_geometry(&g, &Ring::prime_field(5).unwrap().tangent()).is_err());
    }

    #[test]
    fn contracts_hold() {
        for desc in ["projline:Q", "projline:Fp:5", "gras:Fp:5:1+2", "gras:Q:2+2"] {
            let g: Geometry = desc.parse().unwrap();
            let e = extend_geometry(&g, &g.ring().tangent()).unwrap();
            let recs = tangent_contracts(&e, 30, 9);
            assert_eq!(recs.len(), 8);
            for rec in recs {
                assert!(rec.passed(), "{desc}: {rec:?}");
            }
        }
        let g: Geometry = "projline:Fp:3".parse().unwrap();
        let e = extend_geometry(&g, &g.ring().jets("t", 3).unwrap()).unwrap();
        let recs = tangent_contracts(&e, 20, 1);
        assert_eq!(recs.len(), 5);
        assert!(recs.iter().all(|r| r.passed()));
    }
}
