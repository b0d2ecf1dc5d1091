use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::geometry::{GeomError, Geometry, GrasPoint, Perm, PointTable, ProjectiveMap};

/// What a suite needs from a geometry: points, transversality and the
/// structure maps as composable bijections.
pub trait Backend: Sync {
    type P: Clone + PartialEq + Send + Sync;
    type F: Clone + Send + Sync;

    fn transversal(&self, x: &Self::P, a: &Self::P) -> bool;
    /// `J^{xz}_a`, `None` off its domain.
    fn j(&self, x: &Self::P, a: &Self::P, z: &Self::P) -> Option<Self::F>;
    /// `M^{xz}_{ab}`, `None` off its domain.
    fn m(&self, x: &Self::P, a: &Self::P, z: &Self::P, b: &Self::P) -> Option<Self::F>;
    fn apply(&self, f: &Self::F, p: &Self::P) -> Self::P;
    /// `f ∘ g`.
    fn compose(&self, f: &Self::F, g: &Self::F) -> Self::F;
    fn inverse(&self, f: &Self::F) -> Self::F;
    fn map_eq(&self, f: &Self::F, g: &Self::F) -> bool;
    fn is_identity(&self, f: &Self::F) -> bool;
    fn label(&self, p: &Self::P) -> String;
    /// All points, when the geometry is finite and small.
    fn enumerate(&self) -> Option<Vec<Self::P>>;
    /// A random point transversal to every given point.
    fn sample(&self, rng: &mut ChaCha8Rng, transversal_to: &[&Self::P]) -> Option<Self::P>;
}

/// Finite geometry with maps stored as permutations of the point indices.
pub struct TableBackend {
    table: PointTable,
    j_cache: RwLock<HashMap<(u32, u32, u32), Option<Arc<Perm>>>>,
    m_cache: RwLock<HashMap<(u32, u32, u32, u32), Option<Arc<Perm>>>>,
}

impl TableBackend {
    pub fn new(table: PointTable) -> TableBackend {
        TableBackend { table, j_cache: RwLock::default(), m_cache: RwLock::default() }
    }

    pub fn from_geometry(g: &Geometry) -> Result<TableBackend, GeomError> {
        Ok(TableBackend::new(PointTable::new(g)?))
    }

    pub fn table(&self) -> &PointTable {
        &self.table
    }
}

fn cached<K: std::hash::Hash + Eq + Copy>(
    cache: &RwLock<HashMap<K, Option<Arc<Perm>>>>,
    key: K,
    make: impl FnOnce() -> Option<Perm>,
) -> Option<Arc<Perm>> {
    if let Some(v) = cache.read().unwrap().get(&key) {
        return v.clone();
    }
    let v = make().map(Arc::new);
    cache.write().unwrap().insert(key, v.clone());
    v
}

impl Backend for TableBackend {
    type P = u32;
    type F = Arc<Perm>;

    fn transversal(&self, x: &u32, a: &u32) -> bool {
        self.table.t(*x, *a)
    }
    fn j(&self, x: &u32, a: &u32, z: &u32) -> Option<Arc<Perm>> {
        cached(&self.j_cache, (*x, *a, *z), || self.table.j_perm(*x, *a, *z))
    }
    fn m(&self, x: &u32, a: &u32, z: &u32, b: &u32) -> Option<Arc<Perm>> {
        cached(&self.m_cache, (*x, *a, *z, *b), || self.table.m_perm(*x, *a, *z, *b))
    }
    fn apply(&self, f: &Arc<Perm>, p: &u32) -> u32 {
        f[*p as usize]
    }
    fn compose(&self, f: &Arc<Perm>, g: &Arc<Perm>) -> Arc<Perm> {
        Arc::new(g.iter().map(|&i| f[i as usize]).collect())
    }
    fn inverse(&self, f: &Arc<Perm>) -> Arc<Perm> {
        let mut inv = vec![0; f.len()];
        for (i, &v) in f.iter().enumerate() {
            inv[v as usize] = i as u32;
        }
        Arc::new(inv)
    }
    fn map_eq(&self, f: &Arc<Perm>, g: &Arc<Perm>) -> bool {
        f == g
    }
    fn is_identity(&self, f: &Arc<Perm>) -> bool {
        f.iter().enumerate().all(|(i, &v)| i as u32 == v)
    }
    fn label(&self, p: &u32) -> String {
        self.table.label(*p)
    }
    fn enumerate(&self) -> Option<Vec<u32>> {
        Some((0..self.table.len() as u32).collect())
    }
    fn sample(&self, rng: &mut ChaCha8Rng, transversal_to: &[&u32]) -> Option<u32> {
        let c: Vec<u32> = (0..self.table.len() as u32).filter(|p| transversal_to.iter().all(|q| self.table.t(*p, **q))).collect();
        if c.is_empty() {
            None
        } else {
            Some(c[rng.gen_range(0..c.len())])
        }
    }
}

/// Geometry evaluated directly with matrices; works over any ring.
pub struct GeometryBackend {
    geometry: Geometry,
    table: Option<PointTable>,
}

impl GeometryBackend {
    pub fn new(geometry: Geometry) -> GeometryBackend {
        let table = if geometry.ring().is_finite() { PointTable::new(&geometry).ok() } else { None };
        GeometryBackend { geometry, table }
    }

    pub fn geometry(&self) -> &Geometry {
        &self.geometry
    }
}

impl Backend for GeometryBackend {
    type P = GrasPoint;
    type F = ProjectiveMap;

    fn transversal(&self, x: &GrasPoint, a: &GrasPoint) -> bool {
        self.geometry.transversal(x, a)
    }
    fn j(&self, x: &GrasPoint, a: &GrasPoint, z: &GrasPoint) -> Option<ProjectiveMap> {
        self.geometry.j_map(x, a, z).ok()
    }
    fn m(&self, x: &GrasPoint, a: &GrasPoint, z: &GrasPoint, b: &GrasPoint) -> Option<ProjectiveMap> {
        self.geometry.m_map(x, a, z, b).ok()
    }
    fn apply(&self, f: &ProjectiveMap, p: &GrasPoint) -> GrasPoint {
        f.apply(p)
    }
    fn compose(&self, f: &ProjectiveMap, g: &ProjectiveMap) -> ProjectiveMap {
        f.compose(g)
    }
    fn inverse(&self, f: &ProjectiveMap) -> ProjectiveMap {
        f.inverse()
    }
    fn map_eq(&self, f: &ProjectiveMap, g: &ProjectiveMap) -> bool {
        if f == g {
            return true;
        }
        match &self.table {
            Some(t) => t.points().iter().all(|p| f.apply(p) == g.apply(p)),
            None => false,
        }
    }
    fn is_identity(&self, f: &ProjectiveMap) -> bool {
        let id = ProjectiveMap::identity(self.geometry.ring(), self.geometry.dim());
        self.map_eq(f, &id)
    }
    fn label(&self, p: &GrasPoint) -> String {
        self.geometry.label(p)
    }
    fn enumerate(&self) -> Option<Vec<GrasPoint>> {
        self.table.as_ref().map(|t| t.points().to_vec())
    }
    fn sample(&self, rng: &mut ChaCha8Rng, transversal_to: &[&GrasPoint]) -> Option<GrasPoint> {
        let g = &self.geometry;
        let n = g.dim();
        let k = match transversal_to.first() {
            Some(c) => {
                let k = n - c.rank();
                if transversal_to.iter().any(|q| q.rank() != c.rank()) || !g.allows_rank(k) {
                    return None;
                }
                k
            }
            None => {
                let proper: Vec<usize> = (1..n).filter(|&k| g.allows_rank(k)).collect();
                let ranks = if proper.is_empty() { (0..=n).filter(|&k| g.allows_rank(k)).collect() } else { proper };
                ranks[rng.gen_range(0..ranks.len())]
            }
        };
        (0..64).map(|_| g.random_point(rng, k)).find(|p| transversal_to.iter().all(|q| g.transversal(p, q)))
    }
}

macro_rules! delegate_except_j {
    ($inner:tt) => {
        type P = B::P;
        type F = B::F;
        fn transversal(&self, x: &B::P, a: &B::P) -> bool {
            self.$inner.transversal(x, a)
        }
        fn m(&self, x: &B::P, a: &B::P, z: &B::P, b: &B::P) -> Option<B::F> {
            self.$inner.m(x, a, z, b)
        }
        fn apply(&self, f: &B::F, p: &B::P) -> B::P {
            self.$inner.apply(f, p)
        }
        fn compose(&self, f: &B::F, g: &B::F) -> B::F {
            self.$inner.compose(f, g)
        }
        fn inverse(&self, f: &B::F) -> B::F {
            self.$inner.inverse(f)
        }
        fn map_eq(&self, f: &B::F, g: &B::F) -> bool {
            self.$inner.map_eq(f, g)
        }
        fn is_identity(&self, f: &B::F) -> bool {
            self.$inner.is_identity(f)
        }
        fn label(&self, p: &B::P) -> String {
            self.$inner.label(p)
        }
        fn enumerate(&self) -> Option<Vec<B::P>> {
            self.$inner.enumerate()
        }
        fn sample(&self, rng: &mut ChaCha8Rng, t: &[&B::P]) -> Option<B::P> {
            self.$inner.sample(rng, t)
        }
    };
}

/// Negative control: `J^{xx}_a` replaced by the identity whenever the label
/// of `x` sorts before that of `a`, which breaks (S).
pub struct BrokenSymmetry<B>(pub B);

impl<B: Backend> Backend for BrokenSymmetry<B> {
    delegate_except_j!(0);
    fn j(&self, x: &B::P, a: &B::P, z: &B::P) -> Option<B::F> {
        let f = self.0.j(x, a, z)?;
        if x == z && self.0.label(x) < self.0.label(a) {
            Some(self.0.compose(&f, &self.0.inverse(&f)))
        } else {
            Some(f)
        }
    }
}

/// `J^{xz}_a := M^{xz}_{aa}`.
pub struct JFromM<B>(pub B);

impl<B: Backend> Backend for JFromM<B> {
    delegate_except_j!(0);
    fn j(&self, x: &B::P, a: &B::P, z: &B::P) -> Option<B::F> {
        self.0.m(x, a, z, a)
    }
}

/// `J^{xz}_a := (−1)^a_μ` with `μ = (1/2)^a_x(z)` the midpoint of `x`, `z`
/// in `U_a`.
pub struct JFromMidpoints {
    inner: GeometryBackend,
}

impl JFromMidpoints {
    pub fn new(geometry: Geometry) -> Result<JFromMidpoints, GeomError> {
        let r = geometry.ring();
        if !r.is_unit(&r.from_i64(2)) {
            return Err(GeomError::Unsupported(format!("midpoints need 2 invertible in {r}")));
        }
        Ok(JFromMidpoints { inner: GeometryBackend::new(geometry) })
    }

    pub fn midpoint(&self, x: &GrasPoint, a: &GrasPoint, z: &GrasPoint) -> Option<GrasPoint> {
        let g = &self.inner.geometry;
        if !g.transversal(z, a) {
            return None;
        }
        let half = g.ring().inv(&g.ring().from_i64(2))?;
        g.scale(&half, x, a, z).ok()
    }
}

impl Backend for JFromMidpoints {
    type P = GrasPoint;
    type F = ProjectiveMap;
    fn transversal(&self, x: &GrasPoint, a: &GrasPoint) -> bool {
        self.inner.transversal(x, a)
    }
    fn j(&self, x: &GrasPoint, a: &GrasPoint, z: &GrasPoint) -> Option<ProjectiveMap> {
        let mu = self.midpoint(x, a, z)?;
        let g = &self.inner.geometry;
        g.scale_map(&g.ring().from_i64(-1), &mu, a).ok()
    }
    fn m(&self, x: &GrasPoint, a: &GrasPoint, z: &GrasPoint, b: &GrasPoint) -> Option<ProjectiveMap> {
        self.inner.m(x, a, z, b)
    }
    fn apply(&self, f: &ProjectiveMap, p: &GrasPoint) -> GrasPoint {
        f.apply(p)
    }
    fn compose(&self, f: &ProjectiveMap, g: &ProjectiveMap) -> ProjectiveMap {
        f.compose(g)
    }
    fn inverse(&self, f: &ProjectiveMap) -> ProjectiveMap {
        f.inverse()
    }
    fn map_eq(&self, f: &ProjectiveMap, g: &ProjectiveMap) -> bool {
        self.inner.map_eq(f, g)
    }
    fn is_identity(&self, f: &ProjectiveMap) -> bool {
        self.inner.is_identity(f)
    }
    fn label(&self, p: &GrasPoint) -> String {
        self.inner.label(p)
    }
    fn enumerate(&self) -> Option<Vec<GrasPoint>> {
        self.inner.enumerate()
    }
    fn sample(&self, rng: &mut ChaCha8Rng, t: &[&GrasPoint]) -> Option<GrasPoint> {
        self.inner.sample(rng, t)
    }
}
