//! Exact commutative rings: integers, rationals, prime fields, residue rings,
//! multivariate polynomials and Weil algebras (truncated polynomial rings).
//!
//! A [`Ring`] is a cheap handle to a descriptor. Elements are stored as bare
//! [`Value`]s and all arithmetic goes through the ring, which keeps matrices
//! compact. [`RingElement`] pairs the two for ergonomic use.

mod element;
mod text;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

pub use element::RingElement;

/// Exponent vector of a monomial; one entry per generator.
pub type Mono = Vec<u32>;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("descriptor mismatch: {0} vs {1}")]
    Mismatch(String, String),
    #[error("element is not invertible")]
    NotInvertible,
    #[error("invalid ring descriptor `{0}`: {1}")]
    BadDescriptor(String, String),
    #[error("cannot parse element `{0}` in {1}: {2}")]
    BadElement(String, String, String),
}

/// The shape of a ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingKind {
    Integers,
    Rationals,
    PrimeField(u64),
    ModularIntegers(u64),
    Polynomial { base: Ring, vars: Vec<String> },
    /// `orders[i]` is the truncation order k: the generator satisfies g^(k+1) = 0.
    Weil { base: Ring, gens: Vec<String>, orders: Vec<u32> },
}

/// Shared ring descriptor.
#[derive(Clone, Hash)]
pub struct Ring(Arc<RingKind>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}
impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({self})")
    }
}

/// Raw element payload. Canonical: residues reduced, fractions reduced,
/// polynomial maps without zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Value {
    Int(BigInt),
    Rat(BigRational),
    Res(u64),
    Poly(Arc<BTreeMap<Mono, Value>>),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (mut t, mut nt) = (0i128, 1i128);
    let (mut r, mut nr) = (n as i128, a as i128);
    while nr != 0 {
        let q = r / nr;
        (t, nt) = (nt, t - q * nt);
        (r, nr) = (nr, r - q * nr);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(n as i128) as u64)
}

impl Ring {
    pub fn new(kind: RingKind) -> Result<Ring, RingError> {
        match &kind {
            RingKind::PrimeField(p) if !is_prime(*p) => {
                return Err(RingError::BadDescriptor(format!("Fp:{p}"), "modulus is not prime".into()))
            }
            RingKind::ModularIntegers(n) if *n < 2 => {
                return Err(RingError::BadDescriptor(format!("Zn:{n}"), "modulus must be at least 2".into()))
            }
            RingKind::Weil { gens, orders, .. } if gens.len() != orders.len() || orders.iter().any(|&k| k == 0) => {
                return Err(RingError::BadDescriptor("Weil".into(), "truncation orders must be >= 1".into()))
            }
            _ => {}
        }
        Ok(Ring(Arc::new(kind)))
    }

    pub fn integers() -> Ring {
        Ring(Arc::new(RingKind::Integers))
    }
    pub fn rationals() -> Ring {
        Ring(Arc::new(RingKind::Rationals))
    }
    pub fn prime_field(p: u64) -> Result<Ring, RingError> {
        Ring::new(RingKind::PrimeField(p))
    }
    pub fn modular(n: u64) -> Result<Ring, RingError> {
        Ring::new(RingKind::ModularIntegers(n))
    }
    pub fn polynomial(base: &Ring, vars: &[&str]) -> Ring {
        Ring(Arc::new(RingKind::Polynomial { base: base.clone(), vars: vars.iter().map(|s| s.to_string()).collect() }))
    }

    /// Weil extension by generators with truncation orders. Extending a Weil
    /// algebra merges the generator lists, so that extending twice by one
    /// generator of order 1 yields K[e1,e2].
    pub fn weil_extend(&self, gens: &[(&str, u32)]) -> Result<Ring, RingError> {
        if gens.is_empty() {
            return Ok(self.clone());
        }
        if gens.iter().any(|g| g.1 == 0) {
            return Err(RingError::BadDescriptor("Weil".into(), "truncation orders must be >= 1".into()));
        }
        let (base, mut names, mut orders) = match &*self.0 {
            RingKind::Weil { base, gens, orders } => (base.clone(), gens.clone(), orders.clone()),
            _ => (self.clone(), vec![], vec![]),
        };
        for (g, k) in gens {
            if names.iter().any(|n| n == g) {
                return Err(RingError::BadDescriptor(g.to_string(), "duplicate generator name".into()));
            }
            names.push(g.to_string());
            orders.push(*k);
        }
        Ring::new(RingKind::Weil { base, gens: names, orders })
    }

    /// Dual numbers over this ring, with a fresh generator name.
    pub fn tangent(&self) -> Ring {
        let taken = self.generator_names();
        let name = if !taken.iter().any(|n| n == "e") {
            "e".to_string()
        } else {
            (1..).map(|i| format!("e{i}")).find(|n| !taken.contains(n)).unwrap()
        };
        self.weil_extend(&[(&name, 1)]).expect("fresh generator")
    }

    /// Jet ring K[X]/(X^(k+1)).
    pub fn jets(&self, name: &str, k: u32) -> Result<Ring, RingError> {
        self.weil_extend(&[(name, k)])
    }

    pub fn kind(&self) -> &RingKind {
        &self.0
    }

    fn generator_names(&self) -> Vec<String> {
        match &*self.0 {
            RingKind::Weil { base, gens, .. } | RingKind::Polynomial { base, vars: gens } => {
                let mut v = base.generator_names();
                v.extend(gens.iter().cloned());
                v
            }
            _ => vec![],
        }
    }

    /// Underlying coefficient ring of a polynomial or Weil ring.
    pub fn base(&self) -> Option<&Ring> {
        match &*self.0 {
            RingKind::Polynomial { base, .. } | RingKind::Weil { base, .. } => Some(base),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        matches!(&*self.0, RingKind::Rationals | RingKind::PrimeField(_))
    }

    pub fn is_weil(&self) -> bool {
        matches!(&*self.0, RingKind::Weil { .. })
    }

    /// Local ring whose units are exactly the elements with unit residue and
    /// whose residue ring is a field: fields and Weil algebras over fields.
    pub fn is_local_over_field(&self) -> bool {
        match &*self.0 {
            RingKind::Rationals | RingKind::PrimeField(_) => true,
            RingKind::Weil { base, .. } => base.is_local_over_field(),
            _ => false,
        }
    }

    /// Residue field of a local ring (the ring itself for fields).
    pub fn residue_field(&self) -> Ring {
        match &*self.0 {
            RingKind::Weil { base, .. } => base.residue_field(),
            _ => self.clone(),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match &*self.0 {
            RingKind::Integers | RingKind::Rationals => 0,
            RingKind::PrimeField(p) | RingKind::ModularIntegers(p) => *p,
            RingKind::Polynomial { base, .. } | RingKind::Weil { base, .. } => base.characteristic(),
        }
    }

    pub fn cardinality(&self) -> Option<u64> {
        match &*self.0 {
            RingKind::PrimeField(p) | RingKind::ModularIntegers(p) => Some(*p),
            RingKind::Weil { base, orders, .. } => {
                let b = base.cardinality()?;
                let monos: u32 = orders.iter().map(|k| k + 1).product();
                b.checked_pow(monos)
            }
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.cardinality().is_some()
    }

    // ---- constants ----

    pub fn zero(&self) -> Value {
        match &*self.0 {
            RingKind::Integers => Value::Int(BigInt::zero()),
            RingKind::Rationals => Value::Rat(BigRational::zero()),
            RingKind::PrimeField(_) | RingKind::ModularIntegers(_) => Value::Res(0),
            _ => Value::Poly(Arc::new(BTreeMap::new())),
        }
    }

    pub fn one(&self) -> Value {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Value {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Value {
        match &*self.0 {
            RingKind::Integers => Value::Int(n.clone()),
            RingKind::Rationals => Value::Rat(BigRational::from_integer(n.clone())),
            RingKind::PrimeField(p) | RingKind::ModularIntegers(p) => {
                Value::Res(n.mod_floor(&BigInt::from(*p)).to_u64().unwrap())
            }
            RingKind::Polynomial { base, .. } | RingKind::Weil { base, .. } => {
                let c = base.from_bigint(n);
                self.constant(c)
            }
        }
    }

    /// Image of a rational number, if its denominator is invertible.
    pub fn from_rational(&self, q: &BigRational) -> Option<Value> {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        Some(self.mul(&n, &self.inv(&d)?))
    }

    fn nvars(&self) -> usize {
        match &*self.0 {
            RingKind::Polynomial { vars, .. } => vars.len(),
            RingKind::Weil { gens, .. } => gens.len(),
            _ => 0,
        }
    }

    /// Constant polynomial/Weil element with the given base coefficient.
    fn constant(&self, c: Value) -> Value {
        let base = self.base().expect("constant() on non-polynomial ring");
        let mut m = BTreeMap::new();
        if !base.is_zero(&c) {
            m.insert(vec![0; self.nvars()], c);
        }
        Value::Poly(Arc::new(m))
    }

    /// The i-th generator (polynomial variable or Weil generator).
    pub fn generator(&self, i: usize) -> Value {
        let base = self.base().expect("generator() on ring without generators");
        let mut mono = vec![0; self.nvars()];
        mono[i] = 1;
        let mut m = BTreeMap::new();
        m.insert(mono, base.one());
        Value::Poly(Arc::new(m))
    }

    pub fn generator_by_name(&self, name: &str) -> Option<Value> {
        match &*self.0 {
            RingKind::Polynomial { base, vars: gens } | RingKind::Weil { base, gens, .. } => {
                if let Some(i) = gens.iter().position(|g| g == name) {
                    return Some(self.generator(i));
                }
                base.generator_by_name(name).map(|c| self.constant(c))
            }
            _ => None,
        }
    }

    /// Base part π(a) of a polynomial/Weil element (constant coefficient).
    pub fn project(&self, v: &Value) -> Value {
        match v {
            Value::Poly(m) => {
                let base = self.base().unwrap();
                m.get(&vec![0; self.nvars()]).cloned().unwrap_or_else(|| base.zero())
            }
            _ => panic!("project() on non-polynomial value"),
        }
    }

    /// Injection ζ of a base element.
    pub fn inject(&self, c: &Value) -> Value {
        self.constant(c.clone())
    }

    /// Residue-field image, projecting through all Weil layers.
    pub fn residue(&self, v: &Value) -> Value {
        match &*self.0 {
            RingKind::Weil { base, .. } => base.residue(&self.project(v)),
            _ => v.clone(),
        }
    }

    /// Coefficient of a monomial in a polynomial/Weil element.
    pub fn coefficient(&self, v: &Value, mono: &[u32]) -> Value {
        match v {
            Value::Poly(m) => m.get(mono).cloned().unwrap_or_else(|| self.base().unwrap().zero()),
            _ => panic!("coefficient() on non-polynomial value"),
        }
    }

    /// Sum of a map monomial -> base coefficient.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = (Mono, Value)>) -> Value {
        let base = self.base().expect("from_terms on non-polynomial ring");
        let mut m: BTreeMap<Mono, Value> = BTreeMap::new();
        for (mono, c) in terms {
            if self.truncated(&mono) {
                continue;
            }
            let e = m.entry(mono).or_insert_with(|| base.zero());
            *e = base.add(e, &c);
        }
        m.retain(|_, c| !base.is_zero(c));
        Value::Poly(Arc::new(m))
    }

    pub fn terms<'a>(&self, v: &'a Value) -> Vec<(&'a Mono, &'a Value)> {
        match v {
            Value::Poly(m) => m.iter().collect(),
            _ => panic!("terms() on non-polynomial value"),
        }
    }

    /// All monomials of a Weil algebra, in storage order.
    pub fn weil_monomials(&self) -> Vec<Mono> {
        match &*self.0 {
            RingKind::Weil { orders, .. } => {
                let mut out = vec![vec![]];
                for k in orders {
                    out = out
                        .into_iter()
                        .flat_map(|m: Mono| {
                            (0..=*k).map(move |e| {
                                let mut m2 = m.clone();
                                m2.push(e);
                                m2
                            })
                        })
                        .collect();
                }
                out.sort();
                out
            }
            _ => vec![],
        }
    }

    fn truncated(&self, mono: &[u32]) -> bool {
        match &*self.0 {
            RingKind::Weil { orders, .. } => mono.iter().zip(orders).any(|(e, k)| e > k),
            _ => false,
        }
    }

    fn check(&self, v: &Value) -> bool {
        matches!(
            (&*self.0, v),
            (RingKind::Integers, Value::Int(_))
                | (RingKind::Rationals, Value::Rat(_))
                | (RingKind::PrimeField(_) | RingKind::ModularIntegers(_), Value::Res(_))
                | (RingKind::Polynomial { .. } | RingKind::Weil { .. }, Value::Poly(_))
        )
    }

    /// Validates the payload shape against this descriptor.
    pub fn owns(&self, v: &Value) -> bool {
        if !self.check(v) {
            return false;
        }
        match (v, self.base()) {
            (Value::Poly(m), Some(base)) => m
                .iter()
                .all(|(mono, c)| mono.len() == self.nvars() && !self.truncated(mono) && base.owns(c) && !base.is_zero(c)),
            (Value::Res(r), _) => *r < self.characteristic(),
            _ => true,
        }
    }

    // ---- arithmetic ----

    pub fn is_zero(&self, v: &Value) -> bool {
        match v {
            Value::Int(x) => x.is_zero(),
            Value::Rat(x) => x.is_zero(),
            Value::Res(x) => *x == 0,
            Value::Poly(m) => m.is_empty(),
        }
    }

    pub fn is_one(&self, v: &Value) -> bool {
        *v == self.one()
    }

    pub fn add(&self, a: &Value, b: &Value) -> Value {
        match (&*self.0, a, b) {
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => Value::Int(x + y),
            (RingKind::Rationals, Value::Rat(x), Value::Rat(y)) => Value::Rat(x + y),
            (RingKind::PrimeField(p) | RingKind::ModularIntegers(p), Value::Res(x), Value::Res(y)) => {
                Value::Res(((*x as u128 + *y as u128) % *p as u128) as u64)
            }
            (RingKind::Polynomial { base, .. } | RingKind::Weil { base, .. }, Value::Poly(x), Value::Poly(y)) => {
                if x.is_empty() {
                    return b.clone();
                }
                if y.is_empty() {
                    return a.clone();
                }
                let mut m = (**x).clone();
                for (mono, c) in y.iter() {
                    match m.get_mut(mono) {
                        Some(e) => {
                            let s = base.add(e, c);
                            if base.is_zero(&s) {
                                m.remove(mono);
                            } else {
                                *e = s;
                            }
                        }
                        None => {
                            m.insert(mono.clone(), c.clone());
                        }
                    }
                }
                Value::Poly(Arc::new(m))
            }
            _ => panic!("descriptor mismatch in add over {self}"),
        }
    }

    pub fn neg(&self, a: &Value) -> Value {
        match (&*self.0, a) {
            (RingKind::Integers, Value::Int(x)) => Value::Int(-x),
            (RingKind::Rationals, Value::Rat(x)) => Value::Rat(-x),
            (RingKind::PrimeField(p) | RingKind::ModularIntegers(p), Value::Res(x)) => {
                Value::Res(if *x == 0 { 0 } else { p - x })
            }
            (RingKind::Polynomial { base, .. } | RingKind::Weil { base, .. }, Value::Poly(x)) => {
                Value::Poly(Arc::new(x.iter().map(|(m, c)| (m.clone(), base.neg(c))).collect()))
            }
            _ => panic!("descriptor mismatch in neg over {self}"),
        }
    }

    pub fn sub(&self, a: &Value, b: &Value) -> Value {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Value, b: &Value) -> Value {
        match (&*self.0, a, b) {
            (RingKind::Integers, Value::Int(x), Value::Int(y)) => Value::Int(x * y),
            (RingKind::Rationals, Value::Rat(x), Value::Rat(y)) => Value::Rat(x * y),
            (RingKind::PrimeField(p) | RingKind::ModularIntegers(p), Value::Res(x), Value::Res(y)) => {
                Value::Res(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            (RingKind::Polynomial { base, .. } | RingKind::Weil { base, .. }, Value::Poly(x), Value::Poly(y)) => {
                if x.is_empty() || y.is_empty() {
                    return self.zero();
                }
                let mut m: BTreeMap<Mono, Value> = BTreeMap::new();
                for (mx, cx) in x.iter() {
                    for (my, cy) in y.iter() {
                        let mono: Mono = mx.iter().zip(my).map(|(i, j)| i + j).collect();
                        if self.truncated(&mono) {
                            continue;
                        }
                        let c = base.mul(cx, cy);
                        match m.get_mut(&mono) {
                            Some(e) => *e = base.add(e, &c),
                            None => {
                                m.insert(mono, c);
                            }
                        }
                    }
                }
                m.retain(|_, c| !base.is_zero(c));
                Value::Poly(Arc::new(m))
            }
            _ => panic!("descriptor mismatch in mul over {self}"),
        }
    }

    /// Multiplication by a base-ring scalar.
    pub fn scale_base(&self, c: &Value, a: &Value) -> Value {
        let base = self.base().unwrap();
        match a {
            Value::Poly(x) => {
                let mut m: BTreeMap<Mono, Value> = BTreeMap::new();
                for (mono, cx) in x.iter() {
                    let p = base.mul(c, cx);
                    if !base.is_zero(&p) {
                        m.insert(mono.clone(), p);
                    }
                }
                Value::Poly(Arc::new(m))
            }
            _ => panic!("scale_base on non-polynomial value"),
        }
    }

    pub fn pow(&self, a: &Value, mut e: u64) -> Value {
        let mut acc = self.one();
        let mut b = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, v: &Value) -> bool {
        match (&*self.0, v) {
            (RingKind::Integers, Value::Int(x)) => x.abs().is_one(),
            (RingKind::Rationals, Value::Rat(x)) => !x.is_zero(),
            (RingKind::PrimeField(_), Value::Res(x)) => *x != 0,
            (RingKind::ModularIntegers(n), Value::Res(x)) => x.gcd(n) == 1,
            (RingKind::Weil { base, .. }, _) => base.is_unit(&self.project(v)),
            (RingKind::Polynomial { base, .. }, Value::Poly(m)) => {
                m.len() == 1 && m.keys().next().unwrap().iter().all(|&e| e == 0) && base.is_unit(m.values().next().unwrap())
            }
            _ => false,
        }
    }

    /// Multiplicative inverse. Weil elements are inverted by a geometric series
    /// in their nilpotent part.
    pub fn inv(&self, v: &Value) -> Option<Value> {
        match (&*self.0, v) {
            (RingKind::Integers, Value::Int(x)) => x.abs().is_one().then(|| v.clone()),
            (RingKind::Rationals, Value::Rat(x)) => (!x.is_zero()).then(|| Value::Rat(x.recip())),
            (RingKind::PrimeField(p) | RingKind::ModularIntegers(p), Value::Res(x)) => inv_mod(*x, *p).map(Value::Res),
            (RingKind::Weil { base, .. }, Value::Poly(_)) => {
                let a0 = self.project(v);
                let i0 = base.inv(&a0)?;
                let nil = self.sub(v, &self.inject(&a0));
                // a = a0 (1 + t) with t = a0^-1 * nil nilpotent
                let t = self.scale_base(&i0, &nil);
                let mt = self.neg(&t);
                let mut sum = self.one();
                let mut pw = self.one();
                loop {
                    pw = self.mul(&pw, &mt);
                    if self.is_zero(&pw) {
                        break;
                    }
                    sum = self.add(&sum, &pw);
                }
                Some(self.scale_base(&i0, &sum))
            }
            (RingKind::Polynomial { base, .. }, Value::Poly(_)) => {
                if self.is_unit(v) {
                    Some(self.inject(&base.inv(&self.project(v))?))
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn div(&self, a: &Value, b: &Value) -> Option<Value> {
        Some(self.mul(a, &self.inv(b)?))
    }

    // ---- maps between rings ----

    /// Canonical image of `v` (an element of `src`) in this ring, when this ring
    /// is reachable from `src` by the maps Z -> anything, Q -> rings where the
    /// denominator is a unit, and base -> polynomial/Weil extension.
    pub fn coerce(&self, src: &Ring, v: &Value) -> Option<Value> {
        if self == src {
            return Some(v.clone());
        }
        if let RingKind::Integers = &*src.0 {
            if let Value::Int(n) = v {
                return Some(self.from_bigint(n));
            }
        }
        if let RingKind::Rationals = &*src.0 {
            if let Value::Rat(q) = v {
                if let Some(x) = self.from_rational(q) {
                    if !matches!(&*self.0, RingKind::Integers) || q.is_integer() {
                        return Some(x);
                    }
                }
            }
        }
        match &*self.0 {
            RingKind::Polynomial { base, .. } | RingKind::Weil { base, .. } => {
                base.coerce(src, v).map(|c| self.constant(c))
            }
            _ => None,
        }
    }

    /// Ring morphism out of a polynomial/Weil ring determined by the images of
    /// its generators and a coefficient map.
    pub fn substitute(&self, v: &Value, images: &[Value], target: &Ring, coeff: &dyn Fn(&Value) -> Value) -> Value {
        let mut acc = target.zero();
        for (mono, c) in self.terms(v) {
            let mut t = coeff(c);
            for (i, e) in mono.iter().enumerate() {
                if *e > 0 {
                    t = target.mul(&t, &target.pow(&images[i], *e as u64));
                }
            }
            acc = target.add(&acc, &t);
        }
        acc
    }

    // ---- enumeration and sampling ----

    /// Every element of a finite ring, in a fixed order starting with 0, 1.
    pub fn elements(&self) -> Option<Vec<Value>> {
        match &*self.0 {
            RingKind::PrimeField(p) | RingKind::ModularIntegers(p) => Some((0..*p).map(Value::Res).collect()),
            RingKind::Weil { base, .. } => {
                let be = base.elements()?;
                let monos = self.weil_monomials();
                let total = (be.len() as u64).checked_pow(monos.len() as u32)?;
                if total > 1 << 20 {
                    return None;
                }
                let mut out = Vec::with_capacity(total as usize);
                let mut digits = vec![0usize; monos.len()];
                loop {
                    out.push(self.from_terms(monos.iter().cloned().zip(digits.iter().map(|&d| be[d].clone()))));
                    let mut i = 0;
                    loop {
                        if i == digits.len() {
                            return Some(out);
                        }
                        digits[i] += 1;
                        if digits[i] < be.len() {
                            break;
                        }
                        digits[i] = 0;
                        i += 1;
                    }
                }
            }
            _ => None,
        }
    }

    /// Random element: uniform on finite rings, small height otherwise.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Value {
        match &*self.0 {
            RingKind::Integers => self.from_i64(rng.gen_range(-height..=height)),
            RingKind::Rationals => {
                let n = rng.gen_range(-height..=height);
                let d = rng.gen_range(1..=height.max(1));
                Value::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)))
            }
            RingKind::PrimeField(p) | RingKind::ModularIntegers(p) => Value::Res(rng.gen_range(0..*p)),
            RingKind::Weil { base, .. } => {
                let monos = self.weil_monomials();
                self.from_terms(monos.into_iter().map(|m| (m, base.random(rng, height))))
            }
            RingKind::Polynomial { base, .. } => {
                let n = self.nvars();
                let mut terms = vec![(vec![0; n], base.random(rng, height))];
                for i in 0..n {
                    let mut m = vec![0; n];
                    m[i] = 1;
                    terms.push((m, base.random(rng, height)));
                }
                self.from_terms(terms)
            }
        }
    }

    /// Random element of the nilpotent ideal of a Weil algebra.
    pub fn random_nilpotent<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Value {
        let base = self.base().expect("random_nilpotent on non-Weil ring");
        let monos = self.weil_monomials();
        self.from_terms(monos.into_iter().filter(|m| m.iter().any(|&e| e > 0)).map(|m| (m, base.random(rng, height))))
    }

    pub fn element(&self, v: Value) -> RingElement {
        debug_assert!(self.owns(&v), "value does not belong to {self}");
        RingElement::new(self.clone(), v)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::PrimeField(p) => write!(f, "Fp:{p}"),
            RingKind::ModularIntegers(n) => write!(f, "Zn:{n}"),
            RingKind::Polynomial { base, vars } => write!(f, "Poly:{base}[{}]", vars.join(",")),
            RingKind::Weil { base, gens, orders } => {
                let g: Vec<String> = gens.iter().zip(orders).map(|(g, k)| format!("{g}^{}", k + 1)).collect();
                write!(f, "Weil:{base}[{}]", g.join(","))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Value {
        Value::Rat(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn dual_number_product() {
        let r = Ring::rationals().tangent();
        let e = r.generator(0);
        let a = r.add(&r.one(), &e);
        let b = r.sub(&r.one(), &e);
        assert_eq!(r.mul(&a, &b), r.one());
    }

    #[test]
    fn two_generator_product() {
        let r = Ring::rationals().weil_extend(&[("e1", 1), ("e2", 1)]).unwrap();
        let (e1, e2) = (r.generator(0), r.generator(1));
        let [a, b, c, d] = [2, 3, 5, 7].map(|n| r.from_i64(n));
        let lhs = r.mul(&r.add(&a, &r.mul(&e1, &b)), &r.add(&c, &r.mul(&e2, &d)));
        let e12 = r.mul(&e1, &e2);
        let rhs = [r.mul(&a, &c), r.mul(&e1, &r.mul(&b, &c)), r.mul(&e2, &r.mul(&a, &d)), r.mul(&e12, &r.mul(&b, &d))]
            .iter()
            .fold(r.zero(), |s, t| r.add(&s, t));
        assert_eq!(lhs, rhs);
        assert!(r.is_zero(&r.mul(&e1, &e1)));
    }

    #[test]
    fn prime_field_product() {
        let f5 = Ring::prime_field(5).unwrap();
        assert_eq!(f5.mul(&f5.from_i64(3), &f5.from_i64(4)), f5.from_i64(2));
    }

    #[test]
    fn weil_inverses() {
        let r = Ring::rationals().tangent();
        let e = r.generator(0);
        assert_eq!(r.inv(&r.add(&r.one(), &e)).unwrap(), r.sub(&r.one(), &e));
        assert!(Ring::integers().inv(&Ring::integers().from_i64(2)).is_none());

        let j = Ring::rationals().jets("d", 2).unwrap();
        let d = j.generator(0);
        let x = j.add(&j.from_i64(2), &d);
        let inv = j.inv(&x).unwrap();
        let d2 = j.mul(&d, &d);
        let expect = j.from_terms(vec![(vec![0], q(1, 2)), (vec![1], q(-1, 4)), (vec![2], q(1, 8))]);
        assert_eq!(inv, expect);
        assert_eq!(j.mul(&inv, &x), j.one());
        assert!(!j.is_zero(&d2));
        assert!(j.inv(&d).is_none());
    }

    #[test]
    fn projection_and_injection() {
        let r = Ring::rationals().tangent();
        let a = r.from_terms(vec![(vec![0], q(3, 2)), (vec![1], q(5, 1))]);
        assert_eq!(r.project(&a), q(3, 2));
        assert_eq!(r.project(&r.inject(&q(7, 3))), q(7, 3));
        let tt = r.tangent();
        assert_eq!(tt.to_string(), "Weil:Q[e^2,e1^2]");
        assert_eq!(Ring::rationals().weil_extend(&[]).unwrap(), Ring::rationals());
    }

    #[test]
    fn descriptors_validate() {
        assert!(Ring::prime_field(6).is_err());
        assert!(Ring::modular(1).is_err());
        assert!(Ring::modular(6).unwrap().is_unit(&Value::Res(5)));
        assert!(!Ring::modular(6).unwrap().is_unit(&Value::Res(2)));
        assert!(!Ring::modular(6).unwrap().is_field());
    }

    #[test]
    fn finite_weil_enumeration() {
        let r = Ring::prime_field(3).unwrap().tangent();
        let els = r.elements().unwrap();
        assert_eq!(els.len(), 9);
        let units = els.iter().filter(|v| r.is_unit(v)).count();
        assert_eq!(units, 6);
        for u in els.iter().filter(|v| r.is_unit(v)) {
            assert_eq!(r.mul(u, &r.inv(u).unwrap()), r.one());
        }
    }
}
