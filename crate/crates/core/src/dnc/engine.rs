use core::fmt;

use crate::exactmath::{MPoly, Rational};
use crate::surface::{DivisorClass, PolyClass};

/// A divisor on the deformation to the normal cone, written as
/// `pull(D) + fiber * P + exc * E` where `P` is a fiber over the base line and
/// `E` is the exceptional divisor over `Z x {0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreefoldClass {
    pub pull: PolyClass,
    pub fiber: MPoly,
    pub exc: MPoly,
}

impl ThreefoldClass {
    pub fn pull(d: &PolyClass) -> Self {
        ThreefoldClass { pull: d.clone(), fiber: MPoly::zero(), exc: MPoly::zero() }
    }

    pub fn pull_class(d: &DivisorClass) -> Self {
        Self::pull(&PolyClass::from_class(d))
    }

    pub fn exceptional(z: &DivisorClass) -> Self {
        ThreefoldClass {
            pull: PolyClass::from_class(&DivisorClass::zero(z.lattice())),
            fiber: MPoly::zero(),
            exc: MPoly::one(),
        }
    }

    pub fn fiber(z: &DivisorClass) -> Self {
        ThreefoldClass {
            pull: PolyClass::from_class(&DivisorClass::zero(z.lattice())),
            fiber: MPoly::one(),
            exc: MPoly::zero(),
        }
    }

    pub fn add(&self, o: &ThreefoldClass) -> ThreefoldClass {
        ThreefoldClass { pull: self.pull.add(&o.pull), fiber: &self.fiber + &o.fiber, exc: &self.exc + &o.exc }
    }

    pub fn sub(&self, o: &ThreefoldClass) -> ThreefoldClass {
        self.add(&o.scale(&MPoly::int(-1)))
    }

    pub fn scale(&self, p: &MPoly) -> ThreefoldClass {
        ThreefoldClass { pull: self.pull.scale(p), fiber: &self.fiber * p, exc: &self.exc * p }
    }

    /// Degree on a curve of the threefold.
    pub fn dot_curve(&self, g: &ThreefoldCurve) -> MPoly {
        self.pull.dot_class(&g.pushforward) + &self.fiber * &g.fiber_degree + &self.exc * &g.exc_degree
    }
}

impl fmt::Display for ThreefoldClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "pull({})", self.pull)?;
        if !self.fiber.is_zero() {
            write!(f, " + ({})*P", self.fiber)?;
        }
        if !self.exc.is_zero() {
            write!(f, " + ({})*E", self.exc)?;
        }
        Ok(())
    }
}

/// A curve on the threefold, recorded by its pairings with the three kinds of
/// generators: `pull(D).g = D.pushforward`, `P.g` and `E.g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreefoldCurve {
    pub pushforward: DivisorClass,
    pub fiber_degree: MPoly,
    pub exc_degree: MPoly,
}

impl ThreefoldCurve {
    /// A curve inside the central fiber, which has degree zero on `P`.
    pub fn central(pushforward: DivisorClass, exc_degree: Rational) -> Self {
        ThreefoldCurve { pushforward, fiber_degree: MPoly::zero(), exc_degree: MPoly::constant(exc_degree) }
    }

    /// Degree on the proper transform `S_0 = P - E` of the central surface.
    pub fn central_surface_degree(&self) -> MPoly {
        &self.fiber_degree - &self.exc_degree
    }
}

/// Triple intersections on the blow-up of `S x P^1` along `Z x {0}`.
#[derive(Clone, Debug)]
pub struct Engine {
    z: DivisorClass,
}

impl Engine {
    pub fn new(z: &DivisorClass) -> Self {
        Engine { z: z.clone() }
    }

    pub fn z(&self) -> &DivisorClass {
        &self.z
    }

    /// Trilinear product. Nonzero monomials: `pull a . pull b . P = a.b`,
    /// `pull a . E . E = -a.Z` and `E^3 = -Z^2`.
    pub fn triple(&self, a: &ThreefoldClass, b: &ThreefoldClass, c: &ThreefoldClass) -> MPoly {
        let z2 = MPoly::constant(self.z.square());
        let az = a.pull.dot_class(&self.z);
        let bz = b.pull.dot_class(&self.z);
        let cz = c.pull.dot_class(&self.z);
        let ppp = &a.fiber * &b.pull.dot(&c.pull) + &b.fiber * &a.pull.dot(&c.pull) + &c.fiber * &a.pull.dot(&b.pull);
        let pee = &az * &(&b.exc * &c.exc) + &bz * &(&a.exc * &c.exc) + &cz * &(&a.exc * &b.exc);
        let eee = &z2 * &(&a.exc * &(&b.exc * &c.exc));
        ppp - pee - eee
    }

    pub fn cube(&self, a: &ThreefoldClass) -> MPoly {
        self.triple(a, a, a)
    }

    /// `a . b^2`.
    pub fn dot_square(&self, a: &ThreefoldClass, b: &ThreefoldClass) -> MPoly {
        self.triple(a, b, b)
    }
}
