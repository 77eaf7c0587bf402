use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::form::{FactorizationTriple, Form, ImageOracle, ObjectId, SubobjectRef};
use crate::lattice::Fiber;
use crate::zigzag::{chase, ChaseDirection, Zigzag};

use super::FiniteLattice;

/// A Galois connection `left ⊣ right` between two registered lattices with
/// `right(left(x)) = x ∨ right(⊥)` and `left(right(y)) = y ∧ left(⊤)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModularConnection {
    domain: ObjectId,
    codomain: ObjectId,
    left: Arc<[u32]>,
    right: Arc<[u32]>,
}

impl ModularConnection {
    pub fn domain(&self) -> ObjectId {
        self.domain
    }

    pub fn codomain(&self) -> ObjectId {
        self.codomain
    }

    pub fn left(&self, x: usize) -> usize {
        self.left[x] as usize
    }

    pub fn right(&self, y: usize) -> usize {
        self.right[y] as usize
    }

    pub fn left_table(&self) -> Vec<usize> {
        self.left.iter().map(|&v| v as usize).collect()
    }

    pub fn right_table(&self) -> Vec<usize> {
        self.right.iter().map(|&v| v as usize).collect()
    }
}

impl fmt::Debug for ModularConnection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} left {:?} right {:?}", self.domain, self.codomain, self.left_table(), self.right_table())
    }
}

#[derive(Default)]
struct Registry {
    objects: Vec<Arc<FiniteLattice>>,
    by_order: HashMap<Vec<bool>, ObjectId>,
}

/// Finite modular lattices with modular connections. Every element is both
/// normal and conormal: `x` is the image of the inclusion of `[⊥, x]` and the
/// kernel of `− ∨ x` onto `[x, ⊤]`.
#[derive(Default)]
pub struct ModularLatticeForm {
    registry: RwLock<Registry>,
    embeddings: RwLock<HashMap<SubobjectRef, ModularConnection>>,
    projections: RwLock<HashMap<SubobjectRef, ModularConnection>>,
}

impl fmt::Debug for ModularLatticeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModularLatticeForm({})", self.label())
    }
}

impl ModularLatticeForm {
    pub fn new(lattices: impl IntoIterator<Item = FiniteLattice>) -> Result<Self> {
        let form = Self::default();
        for l in lattices {
            form.register(l)?;
        }
        Ok(form)
    }

    /// Registers a lattice; one with an identical order matrix returns the
    /// existing handle.
    pub fn register(&self, lattice: FiniteLattice) -> Result<ObjectId> {
        let key = lattice.order_matrix();
        let mut reg = self.registry.write().expect("registry poisoned");
        if let Some(&id) = reg.by_order.get(&key) {
            return Ok(id);
        }
        let id = ObjectId(reg.objects.len());
        reg.objects.push(Arc::new(lattice));
        reg.by_order.insert(key, id);
        Ok(id)
    }

    pub fn lattice(&self, id: ObjectId) -> Result<Arc<FiniteLattice>> {
        self.registry
            .read()
            .expect("registry poisoned")
            .objects
            .get(id.0)
            .cloned()
            .ok_or(Error::UnknownObject(id))
    }

    /// Validates and returns the connection given by its two tables.
    pub fn connection(&self, domain: ObjectId, codomain: ObjectId, left: &[usize], right: &[usize]) -> Result<ModularConnection> {
        let (a, b) = (self.lattice(domain)?, self.lattice(codomain)?);
        let fail = |m: String| Err(Error::integrity(format!("invalid connection {domain}->{codomain}: {m}")));
        if left.len() != a.size() || right.len() != b.size() {
            return fail("table lengths do not match the lattices".into());
        }
        if let Some(v) = left.iter().find(|&&v| v >= b.size()).or_else(|| right.iter().find(|&&v| v >= a.size())) {
            return fail(format!("value {v} out of range"));
        }
        let (fa, fb) = (a.fiber(), b.fiber());
        for x in fa.elements() {
            for y in fb.elements() {
                if fb.leq(left[x], y) != fa.leq(x, right[y]) {
                    return fail(format!("adjunction fails at x={x}, y={y}"));
                }
            }
        }
        let (r_bot, l_top) = (right[fb.bottom()], left[fa.top()]);
        for x in fa.elements() {
            if right[left[x]] != fa.join(x, r_bot) {
                return fail(format!("right(left({x})) != {x} v right(bottom)"));
            }
        }
        for y in fb.elements() {
            if left[right[y]] != fb.meet(y, l_top) {
                return fail(format!("left(right({y})) != {y} ^ left(top)"));
            }
        }
        Ok(ModularConnection {
            domain,
            codomain,
            left: left.iter().map(|&v| v as u32).collect(),
            right: right.iter().map(|&v| v as u32).collect(),
        })
    }

    fn check_sub(&self, x: SubobjectRef) -> Result<Arc<FiniteLattice>> {
        let l = self.lattice(x.object)?;
        if x.id >= l.size() {
            return Err(Error::domain(format!("{} has no element {}", l.name(), x.id)));
        }
        Ok(l)
    }

    fn check_morphism(&self, f: &ModularConnection) -> Result<()> {
        let (a, b) = (self.lattice(f.domain)?, self.lattice(f.codomain)?);
        if f.left.len() != a.size() || f.right.len() != b.size() {
            return Err(Error::domain(format!("{f:?} does not belong to this form")));
        }
        Ok(())
    }
}

impl Form for ModularLatticeForm {
    type Morphism = ModularConnection;

    fn label(&self) -> String {
        let reg = self.registry.read().expect("registry poisoned");
        let names: Vec<&str> = reg.objects.iter().map(|l| l.name()).collect();
        format!("modular lattices {{{}}}", names.join(", "))
    }

    fn objects(&self) -> Vec<ObjectId> {
        (0..self.registry.read().expect("registry poisoned").objects.len()).map(ObjectId).collect()
    }

    fn object_name(&self, object: ObjectId) -> Result<String> {
        Ok(self.lattice(object)?.name().to_string())
    }

    fn fiber(&self, object: ObjectId) -> Result<Fiber> {
        Ok(self.lattice(object)?.fiber())
    }

    fn describe_subobject(&self, x: SubobjectRef) -> Result<String> {
        Ok(self.check_sub(x)?.label(x.id).to_string())
    }

    fn domain(&self, f: &ModularConnection) -> ObjectId {
        f.domain
    }

    fn codomain(&self, f: &ModularConnection) -> ObjectId {
        f.codomain
    }

    fn identity(&self, object: ObjectId) -> Result<ModularConnection> {
        let id: Vec<usize> = (0..self.lattice(object)?.size()).collect();
        self.connection(object, object, &id, &id)
    }

    fn compose(&self, f: &ModularConnection, g: &ModularConnection) -> Result<ModularConnection> {
        if g.codomain != f.domain {
            return Err(Error::domain(format!("cannot compose {f:?} after {g:?}")));
        }
        Ok(ModularConnection {
            domain: g.domain,
            codomain: f.codomain,
            left: g.left.iter().map(|&x| f.left[x as usize]).collect(),
            right: f.right.iter().map(|&y| g.right[y as usize]).collect(),
        })
    }

    fn direct_image(&self, f: &ModularConnection, x: usize) -> Result<usize> {
        self.check_morphism(f)?;
        f.left.get(x).map(|&v| v as usize).ok_or_else(|| Error::domain(format!("no element {x} in {}", f.domain)))
    }

    fn inverse_image(&self, f: &ModularConnection, y: usize) -> Result<usize> {
        self.check_morphism(f)?;
        f.right.get(y).map(|&v| v as usize).ok_or_else(|| Error::domain(format!("no element {y} in {}", f.codomain)))
    }

    fn is_normal(&self, x: SubobjectRef) -> Result<bool> {
        self.check_sub(x)?;
        Ok(true)
    }

    fn is_conormal(&self, x: SubobjectRef) -> Result<bool> {
        self.check_sub(x)?;
        Ok(true)
    }

    fn embedding(&self, x: SubobjectRef) -> Result<Option<ModularConnection>> {
        if let Some(m) = self.embeddings.read().expect("cache poisoned").get(&x) {
            return Ok(Some(m.clone()));
        }
        let l = self.check_sub(x)?;
        let fiber = l.fiber();
        let (sub, inclusion) = l.interval(fiber.bottom(), x.id)?;
        let dom = self.register(sub)?;
        let position: HashMap<usize, usize> = inclusion.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let right: Vec<usize> = fiber.elements().map(|y| position[&fiber.meet(y, x.id)]).collect();
        let m = self.connection(dom, x.object, &inclusion, &right)?;
        self.embeddings.write().expect("cache poisoned").insert(x, m.clone());
        Ok(Some(m))
    }

    fn projection(&self, x: SubobjectRef) -> Result<Option<ModularConnection>> {
        if let Some(m) = self.projections.read().expect("cache poisoned").get(&x) {
            return Ok(Some(m.clone()));
        }
        let l = self.check_sub(x)?;
        let fiber = l.fiber();
        let (sup, inclusion) = l.interval(x.id, fiber.top())?;
        let cod = self.register(sup)?;
        let position: HashMap<usize, usize> = inclusion.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let left: Vec<usize> = fiber.elements().map(|y| position[&fiber.join(y, x.id)]).collect();
        let m = self.connection(x.object, cod, &left, &inclusion)?;
        self.projections.write().expect("cache poisoned").insert(x, m.clone());
        Ok(Some(m))
    }

    fn factorize(&self, f: &ModularConnection) -> Result<FactorizationTriple<ModularConnection>> {
        self.check_morphism(f)?;
        let (a, b) = (self.lattice(f.domain)?.fiber(), self.lattice(f.codomain)?.fiber());
        let ker = f.right(b.bottom());
        let im = f.left(a.top());
        let pi = self.projection(SubobjectRef::new(f.domain, ker))?.expect("every element is normal");
        let iota = self.embedding(SubobjectRef::new(f.codomain, im))?.expect("every element is conormal");
        // [ker, ⊤] → [⊥, im]: restrict f to the interval and corestrict to its image
        let ker_up = pi.right_table();
        let im_down = iota.left_table();
        let im_pos: HashMap<usize, usize> = im_down.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let ker_pos: HashMap<usize, usize> = ker_up.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let left: Vec<usize> = ker_up.iter().map(|&x| im_pos[&f.left(x)]).collect();
        let right: Vec<usize> = im_down.iter().map(|&y| ker_pos[&f.right(y)]).collect();
        let h = self.connection(pi.codomain, iota.domain, &left, &right)?;
        Ok(FactorizationTriple { projection_part: pi, iso_part: h, embedding_part: iota })
    }

    fn describe_morphism(&self, f: &ModularConnection) -> String {
        let name = |o| self.object_name(o).unwrap_or_else(|_| o.to_string());
        format!("{}->{} left {:?} right {:?}", name(f.domain), name(f.codomain), f.left_table(), f.right_table())
    }

    fn image_oracle(&self) -> Option<Box<dyn ImageOracle<ModularConnection> + '_>> {
        Some(Box::new(OrderScanOracle { form: self }))
    }

    /// The connection whose image maps are the two chases, provided it is a
    /// valid modular connection.
    fn induced_witness(&self, zigzag: &Zigzag<ModularConnection>) -> Result<Option<ModularConnection>> {
        let (s, e) = (zigzag.start(), zigzag.end());
        let (a, b) = (self.fiber(s)?, self.fiber(e)?);
        let left = a
            .elements()
            .map(|x| chase(self, zigzag, SubobjectRef::new(s, x), ChaseDirection::Forward).map(|r| r.id))
            .collect::<Result<Vec<_>>>()?;
        let right = b
            .elements()
            .map(|y| chase(self, zigzag, SubobjectRef::new(e, y), ChaseDirection::Backward).map(|r| r.id))
            .collect::<Result<Vec<_>>>()?;
        match self.connection(s, e, &left, &right) {
            Ok(c) => Ok(Some(c)),
            Err(Error::Integrity(_)) => Ok(None),
            Err(other) => Err(other),
        }
    }
}

/// Meets and joins found by scanning the order relation, and containment of
/// images tested through the right adjoint. Used by the verifier as a second
/// opinion on the lattice tables.
struct OrderScanOracle<'a> {
    form: &'a ModularLatticeForm,
}

impl OrderScanOracle<'_> {
    fn bound(&self, object: ObjectId, a: usize, b: usize, upper: bool) -> Result<usize> {
        let l = self.form.lattice(object)?;
        let le = |x: usize, y: usize| if upper { l.leq(x, y) } else { l.leq(y, x) };
        let candidates: Vec<usize> = (0..l.size()).filter(|&c| le(a, c) && le(b, c)).collect();
        candidates
            .iter()
            .copied()
            .find(|&c| candidates.iter().all(|&d| le(c, d)))
            .ok_or_else(|| Error::integrity(format!("{a} and {b} have no bound in {}", l.name())))
    }
}

impl ImageOracle<ModularConnection> for OrderScanOracle<'_> {
    fn label(&self) -> String {
        "order-relation scan".into()
    }

    fn direct_image(&self, f: &ModularConnection, x: usize) -> Result<usize> {
        // least y with x <= right(y)
        let b = self.form.lattice(f.codomain)?;
        let a = self.form.lattice(f.domain)?;
        let ok: Vec<usize> = (0..b.size()).filter(|&y| a.leq(x, f.right(y))).collect();
        ok.iter().copied().find(|&y| ok.iter().all(|&z| b.leq(y, z))).ok_or_else(|| Error::integrity("no least upper adjoint value"))
    }

    fn inverse_image(&self, f: &ModularConnection, y: usize) -> Result<usize> {
        // largest x with left(x) <= y
        let b = self.form.lattice(f.codomain)?;
        let a = self.form.lattice(f.domain)?;
        let ok: Vec<usize> = (0..a.size()).filter(|&x| b.leq(f.left(x), y)).collect();
        ok.iter().copied().find(|&x| ok.iter().all(|&z| a.leq(z, x))).ok_or_else(|| Error::integrity("no largest lower adjoint value"))
    }

    fn meet(&self, object: ObjectId, a: usize, b: usize) -> Result<usize> {
        self.bound(object, a, b, false)
    }

    fn join(&self, object: ObjectId, a: usize, b: usize) -> Result<usize> {
        self.bound(object, a, b, true)
    }

    fn maps_into(&self, f: &ModularConnection, x: usize, y: usize) -> Result<bool> {
        Ok(self.form.lattice(f.domain)?.leq(x, f.right(y)))
    }
}
