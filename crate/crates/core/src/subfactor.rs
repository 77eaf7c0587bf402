//! Intervals in a fiber, Isbell projections `ZX = (Z ∧ X⁺) ∨ X⁻`, and the
//! butterfly.

use std::cell::OnceCell;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::{relative_normal, Form, ObjectId, SubobjectRef};
use crate::lattice::Fiber;
use crate::zigzag::{canonical_zigzag, induces_hom, induces_iso, Zigzag};

/// `[lo, hi]` in the fiber of some fixed object.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        Self { lo, hi }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// One object of a form together with its fiber; relative normality is
/// computed on demand and cached.
pub struct Ambient<'a, F: Form> {
    form: &'a F,
    object: ObjectId,
    fiber: Fiber,
    conormal: Vec<OnceCell<bool>>,
    rel: Vec<OnceCell<bool>>,
}

impl<'a, F: Form> Ambient<'a, F> {
    pub fn new(form: &'a F, object: ObjectId) -> Result<Self> {
        let fiber = form.fiber(object)?;
        let n = fiber.size();
        Ok(Self {
            form,
            object,
            fiber,
            conormal: (0..n).map(|_| OnceCell::new()).collect(),
            rel: (0..n * n).map(|_| OnceCell::new()).collect(),
        })
    }

    pub fn form(&self) -> &'a F {
        self.form
    }

    pub fn object(&self) -> ObjectId {
        self.object
    }

    pub fn fiber(&self) -> &Fiber {
        &self.fiber
    }

    pub fn subobject(&self, id: usize) -> SubobjectRef {
        SubobjectRef::new(self.object, id)
    }

    pub fn describe(&self, id: usize) -> String {
        self.form.describe_subobject(self.subobject(id)).unwrap_or_else(|_| format!("#{id}"))
    }

    pub fn describe_interval(&self, x: Interval) -> String {
        format!("[{}, {}]", self.describe(x.lo), self.describe(x.hi))
    }

    fn check(&self, id: usize) -> Result<()> {
        if self.fiber.contains(id) {
            Ok(())
        } else {
            Err(Error::domain(format!("{id} is not in the fiber of {}", self.object)))
        }
    }

    fn check_interval(&self, x: Interval) -> Result<()> {
        self.check(x.lo)?;
        self.check(x.hi)?;
        if !self.fiber.leq(x.lo, x.hi) {
            return Err(Error::domain(format!("{} is not an interval", self.describe_interval(x))));
        }
        Ok(())
    }

    pub fn is_conormal(&self, id: usize) -> Result<bool> {
        self.check(id)?;
        if let Some(&v) = self.conormal[id].get() {
            return Ok(v);
        }
        let v = self.form.is_conormal(self.subobject(id))?;
        Ok(*self.conormal[id].get_or_init(|| v))
    }

    /// `lo ⊲ hi`.
    pub fn relative_normal(&self, lo: usize, hi: usize) -> Result<bool> {
        self.check(lo)?;
        self.check(hi)?;
        let cell = &self.rel[lo * self.fiber.size() + hi];
        if let Some(&v) = cell.get() {
            return Ok(v);
        }
        let v = relative_normal(self.form, self.subobject(lo), self.subobject(hi))?;
        Ok(*cell.get_or_init(|| v))
    }

    /// `ZX = (Z ∧ X⁺) ∨ X⁻`.
    pub fn project(&self, z: usize, x: Interval) -> Result<usize> {
        self.check(z)?;
        self.check_interval(x)?;
        Ok(self.fiber.join(self.fiber.meet(z, x.hi), x.lo))
    }

    /// `YX = [Y⁻X, Y⁺X]`.
    pub fn project_interval(&self, y: Interval, x: Interval) -> Result<Interval> {
        self.check_interval(y)?;
        Ok(Interval::new(self.project(y.lo, x)?, self.project(y.hi, x)?))
    }

    pub fn is_subfactor(&self, x: Interval) -> Result<bool> {
        self.check_interval(x)?;
        self.relative_normal(x.lo, x.hi)
    }

    /// `YX = X`.
    pub fn projects_onto(&self, y: Interval, x: Interval) -> Result<bool> {
        Ok(self.project_interval(y, x)? == x)
    }

    /// `A ⊆ B` as intervals.
    pub fn interval_contains(&self, outer: Interval, inner: Interval) -> bool {
        self.fiber.leq(outer.lo, inner.lo) && self.fiber.leq(inner.hi, outer.hi)
    }

    /// All intervals of the fiber.
    pub fn intervals(&self) -> Vec<Interval> {
        let mut out = Vec::new();
        for lo in self.fiber.elements() {
            for hi in self.fiber.elements() {
                if self.fiber.leq(lo, hi) {
                    out.push(Interval::new(lo, hi));
                }
            }
        }
        out
    }

    /// All subfactors of the fiber.
    pub fn subfactors(&self) -> Result<Vec<Interval>> {
        let mut out = Vec::new();
        for x in self.intervals() {
            if self.relative_normal(x.lo, x.hi)? {
                out.push(x);
            }
        }
        Ok(out)
    }

    fn require_subfactor(&self, x: Interval, what: &str) -> Result<()> {
        if !self.is_subfactor(x)? {
            return Err(Error::domain(format!("{what} {} is not a subfactor", self.describe_interval(x))));
        }
        Ok(())
    }

    /// Checks `(YX)Y = XY` for a subfactor `X`, and that `YX` is a subfactor
    /// whenever `Y⁺X` is conormal and `Y` is itself a subfactor. Without the
    /// last hypothesis the second claim fails: in S3, `[{0,3}, S3]` projects
    /// to itself in `[0, S3]`.
    pub fn subfactor_projection_check(&self, x: Interval, y: Interval) -> Result<ProjectionCheck> {
        self.require_subfactor(x, "X")?;
        self.check_interval(y)?;
        let yx = self.project_interval(y, x)?;
        let xy = self.project_interval(x, y)?;
        let yx_y = self.project_interval(yx, y)?;
        let yx_conormal = self.is_conormal(yx.hi)?;
        let yx_subfactor = self.is_subfactor(yx)?;
        let y_subfactor = self.is_subfactor(y)?;
        Ok(ProjectionCheck {
            x,
            y,
            yx,
            xy,
            yx_y,
            identity_holds: yx_y == xy,
            yx_conormal,
            y_subfactor,
            yx_subfactor,
        })
    }

    /// `X⁺/X⁻ ← X⁺ → G ← Y⁺ → Y⁺/Y⁻`.
    pub fn subfactor_zigzag(&self, x: Interval, y: Interval) -> Result<Zigzag<F::Morphism>> {
        let zx = canonical_zigzag(self.form, self.object, x)?;
        let zy = canonical_zigzag(self.form, self.object, y)?;
        zx.reversed().concat(&zy)
    }

    /// Compares "the zigzag between the quotients of `X` and `Y` induces an
    /// isomorphism" with "`XY = Y` and `YX = X`".
    pub fn theorem_a_equivalence(&self, x: Interval, y: Interval) -> Result<ZigzagIsoCheck<F::Morphism>> {
        self.require_subfactor(x, "X")?;
        self.require_subfactor(y, "Y")?;
        let zigzag = self.subfactor_zigzag(x, y)?;
        let induces_iso = induces_iso(self.form, &zigzag)?;
        let xy_is_y = self.projects_onto(x, y)?;
        let yx_is_x = self.projects_onto(y, x)?;
        Ok(ZigzagIsoCheck { x, y, zigzag, induces_iso, xy_is_y, yx_is_x })
    }

    pub fn butterfly(&self, x: Interval, y: Interval) -> Result<ButterflyReport<F::Morphism>> {
        self.require_subfactor(x, "X")?;
        self.require_subfactor(y, "Y")?;
        let yx = self.project_interval(y, x)?;
        let xy = self.project_interval(x, y)?;
        let mutual = (self.project_interval(yx, xy)? == xy, self.project_interval(xy, yx)? == yx);
        let conormal = (self.is_conormal(yx.hi)?, self.is_conormal(xy.hi)?);
        let subfactors = (self.is_subfactor(yx)?, self.is_subfactor(xy)?);
        let (mut iso_zigzag, mut induces_iso, mut iso_witness) = (None, false, None);
        if subfactors.0 && subfactors.1 {
            let z = self.subfactor_zigzag(yx, xy)?;
            induces_iso = crate::zigzag::induces_iso(self.form, &z)?;
            if induces_iso {
                iso_witness = induces_hom(self.form, &z)?.and_then(|h| h.witness);
            }
            iso_zigzag = Some(z);
        }
        Ok(ButterflyReport {
            x,
            y,
            yx,
            xy,
            mutual,
            conormal,
            subfactors,
            iso_zigzag,
            induces_iso,
            iso_witness,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionCheck {
    pub x: Interval,
    pub y: Interval,
    pub yx: Interval,
    pub xy: Interval,
    pub yx_y: Interval,
    /// `(YX)Y = XY`.
    pub identity_holds: bool,
    pub yx_conormal: bool,
    pub y_subfactor: bool,
    pub yx_subfactor: bool,
}

impl ProjectionCheck {
    pub fn holds(&self) -> bool {
        self.identity_holds && (!(self.yx_conormal && self.y_subfactor) || self.yx_subfactor)
    }
}

#[derive(Debug, Clone)]
pub struct ZigzagIsoCheck<M> {
    pub x: Interval,
    pub y: Interval,
    pub zigzag: Zigzag<M>,
    pub induces_iso: bool,
    pub xy_is_y: bool,
    pub yx_is_x: bool,
}

impl<M> ZigzagIsoCheck<M> {
    pub fn holds(&self) -> bool {
        self.induces_iso == (self.xy_is_y && self.yx_is_x)
    }
}

#[derive(Debug, Clone)]
pub struct ButterflyReport<M> {
    pub x: Interval,
    pub y: Interval,
    pub yx: Interval,
    pub xy: Interval,
    /// `(YX)(XY) = XY` and `(XY)(YX) = YX`.
    pub mutual: (bool, bool),
    /// Conormality of `Y⁺X` and `X⁺Y`.
    pub conormal: (bool, bool),
    /// Whether `YX` and `XY` are subfactors.
    pub subfactors: (bool, bool),
    /// The zigzag between the quotients of `YX` and `XY`, present when both
    /// are subfactors.
    pub iso_zigzag: Option<Zigzag<M>>,
    pub induces_iso: bool,
    pub iso_witness: Option<M>,
}

impl<M> ButterflyReport<M> {
    /// Both projection identities hold, and when both tops are conormal the
    /// projections are subfactors with isomorphic quotients.
    pub fn holds(&self) -> bool {
        let mutual = self.mutual.0 && self.mutual.1;
        let conditional = !(self.conormal.0 && self.conormal.1)
            || (self.subfactors.0 && self.subfactors.1 && self.induces_iso);
        mutual && conditional
    }
}
