use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Ring, RingError, Value};

/// An element together with its ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RingElement {
    ring: Ring,
    value: Value,
}

impl RingElement {
    pub fn new(ring: Ring, value: Value) -> Self {
        RingElement { ring, value }
    }

    pub fn parse(ring: &Ring, s: &str) -> Result<Self, RingError> {
        Ok(RingElement::new(ring.clone(), ring.parse_element(s)?))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn value(&self) -> &Value {
        &self.value
    }

    fn same(&self, other: &Self) -> Result<(), RingError> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(RingError::Mismatch(self.ring.to_string(), other.ring.to_string()))
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self, RingError> {
        self.same(o)?;
        Ok(RingElement::new(self.ring.clone(), self.ring.add(&self.value, &o.value)))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self, RingError> {
        self.same(o)?;
        Ok(RingElement::new(self.ring.clone(), self.ring.sub(&self.value, &o.value)))
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self, RingError> {
        self.same(o)?;
        Ok(RingElement::new(self.ring.clone(), self.ring.mul(&self.value, &o.value)))
    }

    pub fn invert(&self) -> Result<Self, RingError> {
        self.ring.inv(&self.value).map(|v| RingElement::new(self.ring.clone(), v)).ok_or(RingError::NotInvertible)
    }

    pub fn is_zero(&self) -> bool {
        self.ring.is_zero(&self.value)
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(&self.value)
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format(&self.value))
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self.ring.format(&self.value), self.ring)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $try:ident) => {
        impl $tr for &RingElement {
            type Output = RingElement;
            fn $m(self, o: &RingElement) -> RingElement {
                self.$try(o).expect("ring mismatch")
            }
        }
        impl $tr for RingElement {
            type Output = RingElement;
            fn $m(self, o: RingElement) -> RingElement {
                (&self).$try(&o).expect("ring mismatch")
            }
        }
    };
}
binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        RingElement::new(self.ring.clone(), self.ring.neg(&self.value))
    }
}

impl Neg for RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn operators_and_mismatch() {
        let q = Ring::rationals();
        let a = RingElement::parse(&q, "3/4").unwrap();
        let b = RingElement::parse(&q, "1/4").unwrap();
        assert_eq!((&a + &b).to_string(), "1");
        assert_eq!((&a * &b).to_string(), "3/16");
        assert_eq!((-&a).to_string(), "-3/4");
        let z = RingElement::parse(&Ring::integers(), "3").unwrap();
        assert!(matches!(a.try_add(&z), Err(RingError::Mismatch(_, _))));
        assert!(z.invert().is_err());
    }
}
