//! The abstract noetherian-form interface.
//!
//! A [`Form`] bundles objects ("groups"), morphisms ("homomorphisms"), one
//! bounded lattice of subobjects per object (its fiber), a Galois connection
//! of direct and inverse images per morphism, and normality data with
//! witnessing embeddings and projection morphisms. Everything here is finite
//! and enumerable, so every quantified axiom can be checked by exhaustion.

use std::fmt::{self, Debug};
use std::hash::Hash;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::Fiber;
use crate::zigzag::Zigzag;

/// Handle of an object registered in a form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjectId(pub usize);

impl fmt::Display for ObjectId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A subobject: an index into the fiber of `object`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubobjectRef {
    pub object: ObjectId,
    pub id: usize,
}

impl SubobjectRef {
    pub fn new(object: ObjectId, id: usize) -> Self {
        Self { object, id }
    }
}

/// `f = embedding ∘ iso ∘ projection`, the image factorization of a morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationTriple<M> {
    pub projection_part: M,
    pub iso_part: M,
    pub embedding_part: M,
}

/// Normality flags of a subobject with their witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normality<M> {
    pub is_normal: bool,
    pub is_conormal: bool,
    /// Embedding whose image is the subobject; present iff conormal.
    pub embedding: Option<M>,
    /// Projection morphism whose kernel is the subobject; present iff normal.
    pub projection: Option<M>,
}

/// Direct and inverse image maps of one morphism, materialized as tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ImagePair {
    pub direct: Vec<usize>,
    pub inverse: Vec<usize>,
}

/// A second, independent implementation of the image maps and fiber
/// operations of an instance. The axiom verifier compares the form against
/// it and never uses it for anything else.
pub trait ImageOracle<M> {
    fn label(&self) -> String;
    fn direct_image(&self, f: &M, x: usize) -> Result<usize>;
    fn inverse_image(&self, f: &M, y: usize) -> Result<usize>;
    fn meet(&self, object: ObjectId, a: usize, b: usize) -> Result<usize>;
    fn join(&self, object: ObjectId, a: usize, b: usize) -> Result<usize>;
    /// The relation `X ⊆_f Y`: `f` restricts to a morphism from `X` into `Y`.
    fn maps_into(&self, f: &M, x: usize, y: usize) -> Result<bool>;
}

/// A finite noetherian form.
///
/// Composition follows the usual convention: `compose(f, g)` is `f ∘ g`,
/// first `g` then `f`.
pub trait Form {
    type Morphism: Clone + Eq + Hash + Debug;

    fn label(&self) -> String;

    /// Objects registered so far. Instances may create further objects on
    /// demand (quotients, subobjects realized as objects).
    fn objects(&self) -> Vec<ObjectId>;
    fn object_name(&self, object: ObjectId) -> Result<String>;
    fn fiber(&self, object: ObjectId) -> Result<Fiber>;
    fn describe_subobject(&self, x: SubobjectRef) -> Result<String>;

    fn domain(&self, f: &Self::Morphism) -> ObjectId;
    fn codomain(&self, f: &Self::Morphism) -> ObjectId;
    fn identity(&self, object: ObjectId) -> Result<Self::Morphism>;
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism>;

    fn direct_image(&self, f: &Self::Morphism, x: usize) -> Result<usize>;
    fn inverse_image(&self, f: &Self::Morphism, y: usize) -> Result<usize>;

    fn is_normal(&self, x: SubobjectRef) -> Result<bool>;
    fn is_conormal(&self, x: SubobjectRef) -> Result<bool>;
    /// Embedding associated to a conormal subobject (`None` otherwise).
    fn embedding(&self, x: SubobjectRef) -> Result<Option<Self::Morphism>>;
    /// Projection morphism associated to a normal subobject (`None` otherwise).
    fn projection(&self, x: SubobjectRef) -> Result<Option<Self::Morphism>>;
    fn factorize(&self, f: &Self::Morphism) -> Result<FactorizationTriple<Self::Morphism>>;

    fn describe_morphism(&self, f: &Self::Morphism) -> String {
        format!("{f:?}")
    }

    fn image_oracle(&self) -> Option<Box<dyn ImageOracle<Self::Morphism> + '_>> {
        None
    }

    /// Element-level morphism induced by a zigzag, for instances that can
    /// exhibit one. Only consulted once the chase criterion holds.
    fn induced_witness(&self, _zigzag: &Zigzag<Self::Morphism>) -> Result<Option<Self::Morphism>> {
        Ok(None)
    }

    /// The concrete group carried by an object, for group instances.
    fn group_of(&self, _object: ObjectId) -> Option<Arc<FiniteGroup>> {
        None
    }
}

impl<F: Form + ?Sized> Form for &F {
    type Morphism = F::Morphism;

    fn label(&self) -> String {
        (**self).label()
    }
    fn objects(&self) -> Vec<ObjectId> {
        (**self).objects()
    }
    fn object_name(&self, object: ObjectId) -> Result<String> {
        (**self).object_name(object)
    }
    fn fiber(&self, object: ObjectId) -> Result<Fiber> {
        (**self).fiber(object)
    }
    fn describe_subobject(&self, x: SubobjectRef) -> Result<String> {
        (**self).describe_subobject(x)
    }
    fn domain(&self, f: &Self::Morphism) -> ObjectId {
        (**self).domain(f)
    }
    fn codomain(&self, f: &Self::Morphism) -> ObjectId {
        (**self).codomain(f)
    }
    fn identity(&self, object: ObjectId) -> Result<Self::Morphism> {
        (**self).identity(object)
    }
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism> {
        (**self).compose(f, g)
    }
    fn direct_image(&self, f: &Self::Morphism, x: usize) -> Result<usize> {
        (**self).direct_image(f, x)
    }
    fn inverse_image(&self, f: &Self::Morphism, y: usize) -> Result<usize> {
        (**self).inverse_image(f, y)
    }
    fn is_normal(&self, x: SubobjectRef) -> Result<bool> {
        (**self).is_normal(x)
    }
    fn is_conormal(&self, x: SubobjectRef) -> Result<bool> {
        (**self).is_conormal(x)
    }
    fn embedding(&self, x: SubobjectRef) -> Result<Option<Self::Morphism>> {
        (**self).embedding(x)
    }
    fn projection(&self, x: SubobjectRef) -> Result<Option<Self::Morphism>> {
        (**self).projection(x)
    }
    fn factorize(&self, f: &Self::Morphism) -> Result<FactorizationTriple<Self::Morphism>> {
        (**self).factorize(f)
    }
    fn describe_morphism(&self, f: &Self::Morphism) -> String {
        (**self).describe_morphism(f)
    }
    fn image_oracle(&self) -> Option<Box<dyn ImageOracle<Self::Morphism> + '_>> {
        (**self).image_oracle()
    }
    fn induced_witness(&self, zigzag: &Zigzag<Self::Morphism>) -> Result<Option<Self::Morphism>> {
        (**self).induced_witness(zigzag)
    }
    fn group_of(&self, object: ObjectId) -> Option<Arc<FiniteGroup>> {
        (**self).group_of(object)
    }
}

/// The functorial dual `F^op`: same objects and subobjects, reversed
/// morphisms and fiber orders, direct and inverse images exchanged, normal
/// and conormal exchanged, embeddings and projections exchanged.
#[derive(Debug, Clone)]
pub struct Dual<F>(pub F);

impl<F> Dual<F> {
    pub fn inner(&self) -> &F {
        &self.0
    }
}

/// `dualize(F) = F^op`, borrowing the underlying form.
pub fn dualize<F: Form>(form: &F) -> Dual<&F> {
    Dual(form)
}

impl<F: Form> Form for Dual<F> {
    type Morphism = F::Morphism;

    fn label(&self) -> String {
        format!("dual({})", self.0.label())
    }
    fn objects(&self) -> Vec<ObjectId> {
        self.0.objects()
    }
    fn object_name(&self, object: ObjectId) -> Result<String> {
        self.0.object_name(object)
    }
    fn fiber(&self, object: ObjectId) -> Result<Fiber> {
        Ok(self.0.fiber(object)?.dual())
    }
    fn describe_subobject(&self, x: SubobjectRef) -> Result<String> {
        self.0.describe_subobject(x)
    }
    fn domain(&self, f: &Self::Morphism) -> ObjectId {
        self.0.codomain(f)
    }
    fn codomain(&self, f: &Self::Morphism) -> ObjectId {
        self.0.domain(f)
    }
    fn identity(&self, object: ObjectId) -> Result<Self::Morphism> {
        self.0.identity(object)
    }
    fn compose(&self, f: &Self::Morphism, g: &Self::Morphism) -> Result<Self::Morphism> {
        self.0.compose(g, f)
    }
    fn direct_image(&self, f: &Self::Morphism, x: usize) -> Result<usize> {
        self.0.inverse_image(f, x)
    }
    fn inverse_image(&self, f: &Self::Morphism, y: usize) -> Result<usize> {
        self.0.direct_image(f, y)
    }
    fn is_normal(&self, x: SubobjectRef) -> Result<bool> {
        self.0.is_conormal(x)
    }
    fn is_conormal(&self, x: SubobjectRef) -> Result<bool> {
        self.0.is_normal(x)
    }
    fn embedding(&self, x: SubobjectRef) -> Result<Option<Self::Morphism>> {
        self.0.projection(x)
    }
    fn projection(&self, x: SubobjectRef) -> Result<Option<Self::Morphism>> {
        self.0.embedding(x)
    }
    fn factorize(&self, f: &Self::Morphism) -> Result<FactorizationTriple<Self::Morphism>> {
        // f = ι ∘ h ∘ π in F reads as f = π ∘ h ∘ ι in F^op.
        let t = self.0.factorize(f)?;
        Ok(FactorizationTriple {
            projection_part: t.embedding_part,
            iso_part: t.iso_part,
            embedding_part: t.projection_part,
        })
    }
    fn describe_morphism(&self, f: &Self::Morphism) -> String {
        format!("op({})", self.0.describe_morphism(f))
    }
    fn image_oracle(&self) -> Option<Box<dyn ImageOracle<Self::Morphism> + '_>> {
        let inner = self.0.image_oracle()?;
        Some(Box::new(DualOracle(inner)))
    }
}

struct DualOracle<'a, M>(Box<dyn ImageOracle<M> + 'a>);

impl<M> ImageOracle<M> for DualOracle<'_, M> {
    fn label(&self) -> String {
        format!("dual({})", self.0.label())
    }
    fn direct_image(&self, f: &M, x: usize) -> Result<usize> {
        self.0.inverse_image(f, x)
    }
    fn inverse_image(&self, f: &M, y: usize) -> Result<usize> {
        self.0.direct_image(f, y)
    }
    fn meet(&self, object: ObjectId, a: usize, b: usize) -> Result<usize> {
        self.0.join(object, a, b)
    }
    fn join(&self, object: ObjectId, a: usize, b: usize) -> Result<usize> {
        self.0.meet(object, a, b)
    }
    fn maps_into(&self, f: &M, x: usize, y: usize) -> Result<bool> {
        self.0.maps_into(f, y, x)
    }
}

// ---------------------------------------------------------------------------
// Derived operations

/// The bounded lattice of subobjects of `object`.
pub fn fiber_lattice<F: Form>(form: &F, object: ObjectId) -> Result<Fiber> {
    form.fiber(object)
}

fn check_in_fiber(fiber: &Fiber, id: usize, what: &str) -> Result<()> {
    if fiber.contains(id) {
        Ok(())
    } else {
        Err(Error::domain(format!("{what} {id} is not in the fiber (size {})", fiber.size())))
    }
}

/// Tabulates both image maps of `f`.
pub fn images<F: Form>(form: &F, f: &F::Morphism) -> Result<ImagePair> {
    let dom = form.fiber(form.domain(f))?;
    let cod = form.fiber(form.codomain(f))?;
    let direct = dom.elements().map(|x| form.direct_image(f, x)).collect::<Result<_>>()?;
    let inverse = cod.elements().map(|y| form.inverse_image(f, y)).collect::<Result<_>>()?;
    Ok(ImagePair { direct, inverse })
}

/// `(Ker f, Im f) = (f⁻¹(0), f(1))`.
pub fn kernel_image<F: Form>(form: &F, f: &F::Morphism) -> Result<(SubobjectRef, SubobjectRef)> {
    let (d, c) = (form.domain(f), form.codomain(f));
    let ker = form.inverse_image(f, form.fiber(c)?.bottom())?;
    let im = form.direct_image(f, form.fiber(d)?.top())?;
    Ok((SubobjectRef::new(d, ker), SubobjectRef::new(c, im)))
}

pub fn kernel<F: Form>(form: &F, f: &F::Morphism) -> Result<usize> {
    Ok(kernel_image(form, f)?.0.id)
}

pub fn image<F: Form>(form: &F, f: &F::Morphism) -> Result<usize> {
    Ok(kernel_image(form, f)?.1.id)
}

pub fn is_embedding<F: Form>(form: &F, f: &F::Morphism) -> Result<bool> {
    Ok(kernel(form, f)? == form.fiber(form.domain(f))?.bottom())
}

pub fn is_projection<F: Form>(form: &F, f: &F::Morphism) -> Result<bool> {
    Ok(image(form, f)? == form.fiber(form.codomain(f))?.top())
}

pub fn is_isomorphism<F: Form>(form: &F, f: &F::Morphism) -> Result<bool> {
    Ok(is_embedding(form, f)? && is_projection(form, f)?)
}

/// Normality flags plus the witnessing embedding and projection morphism.
pub fn normality<F: Form>(form: &F, x: SubobjectRef) -> Result<Normality<F::Morphism>> {
    check_in_fiber(&form.fiber(x.object)?, x.id, "subobject")?;
    let is_normal = form.is_normal(x)?;
    let is_conormal = form.is_conormal(x)?;
    let embedding = if is_conormal { form.embedding(x)? } else { None };
    let projection = if is_normal { form.projection(x)? } else { None };
    if is_conormal && embedding.is_none() {
        return Err(Error::integrity(format!("conormal {x:?} has no embedding")));
    }
    if is_normal && projection.is_none() {
        return Err(Error::integrity(format!("normal {x:?} has no projection")));
    }
    Ok(Normality { is_normal, is_conormal, embedding, projection })
}

/// `X ⊲ Y`: `X ⊆ Y`, `Y` conormal, and `ι_Y⁻¹(X)` normal.
pub fn relative_normal<F: Form>(form: &F, x: SubobjectRef, y: SubobjectRef) -> Result<bool> {
    if x.object != y.object {
        return Err(Error::domain(format!(
            "subobjects {x:?} and {y:?} live in different fibers"
        )));
    }
    let fiber = form.fiber(x.object)?;
    check_in_fiber(&fiber, x.id, "subobject")?;
    check_in_fiber(&fiber, y.id, "subobject")?;
    if !fiber.leq(x.id, y.id) || !form.is_conormal(y)? {
        return Ok(false);
    }
    let iota = form
        .embedding(y)?
        .ok_or_else(|| Error::integrity(format!("conormal {y:?} has no embedding")))?;
    let pulled = form.inverse_image(&iota, x.id)?;
    form.is_normal(SubobjectRef::new(form.domain(&iota), pulled))
}

/// Checks the invariants of a factorization of `f`; returns a description of
/// the first one that fails.
pub fn factorization_defect<F: Form>(
    form: &F,
    f: &F::Morphism,
    t: &FactorizationTriple<F::Morphism>,
) -> Result<Option<String>> {
    let composite = form.compose(&t.embedding_part, &form.compose(&t.iso_part, &t.projection_part)?)?;
    if &composite != f {
        return Ok(Some("composite of the factorization differs from the morphism".into()));
    }
    if !is_projection(form, &t.projection_part)? {
        return Ok(Some("projection part is not a projection".into()));
    }
    if !is_embedding(form, &t.embedding_part)? {
        return Ok(Some("embedding part is not an embedding".into()));
    }
    if !is_isomorphism(form, &t.iso_part)? {
        return Ok(Some("middle part is not an isomorphism".into()));
    }
    if kernel(form, &t.projection_part)? != kernel(form, f)? {
        return Ok(Some("projection part is not associated to Ker f".into()));
    }
    if image(form, &t.embedding_part)? != image(form, f)? {
        return Ok(Some("embedding part is not associated to Im f".into()));
    }
    Ok(None)
}
