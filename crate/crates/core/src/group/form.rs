use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::form::{FactorizationTriple, Form, ImageOracle, ObjectId, SubobjectRef};
use crate::lattice::{Fiber, LatticeTables};
use crate::zigzag::{LegDirection, Zigzag};

use super::naive::NaiveGroupOracle;
use super::{check_homomorphism, ElementSet, FiniteGroup};

/// Default cap on the order of groups registered in a [`GroupForm`].
pub const DEFAULT_MAX_ORDER: usize = 128;

/// A homomorphism between two objects of a [`GroupForm`], as an element map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupMorphism {
    domain: ObjectId,
    codomain: ObjectId,
    map: Arc<[u32]>,
}

impl GroupMorphism {
    fn from_map(domain: ObjectId, codomain: ObjectId, map: &[usize]) -> Self {
        Self { domain, codomain, map: map.iter().map(|&v| v as u32).collect() }
    }

    pub fn domain(&self) -> ObjectId {
        self.domain
    }

    pub fn codomain(&self) -> ObjectId {
        self.codomain
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn map(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v as usize).collect()
    }
}

impl fmt::Debug for GroupMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{} {:?}", self.domain, self.codomain, self.map())
    }
}

pub(super) struct GroupObject {
    pub(super) group: Arc<FiniteGroup>,
    pub(super) subgroups: Vec<ElementSet>,
    index: HashMap<ElementSet, usize>,
    fiber: Fiber,
    normal: Vec<bool>,
}

impl GroupObject {
    fn build(group: FiniteGroup) -> Self {
        let subgroups = group.all_subgroups();
        let index: HashMap<ElementSet, usize> =
            subgroups.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let n = subgroups.len();
        let mut leq = vec![false; n * n];
        let mut meet = vec![0u32; n * n];
        let mut join = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                leq[a * n + b] = subgroups[a].is_subset(&subgroups[b]);
                leq[b * n + a] = subgroups[b].is_subset(&subgroups[a]);
                let m = index[&subgroups[a].intersection(&subgroups[b])] as u32;
                let j = index[&group.join(&subgroups[a], &subgroups[b])] as u32;
                meet[a * n + b] = m;
                meet[b * n + a] = m;
                join[a * n + b] = j;
                join[b * n + a] = j;
            }
        }
        // subgroups are sorted by size: the trivial group first, the whole group last
        let tables = LatticeTables::from_parts(n, leq, meet, join, 0, n - 1);
        let normal = subgroups.iter().map(|s| group.is_normal_subgroup(s)).collect();
        Self { group: Arc::new(group), subgroups, index, fiber: Fiber::new(Arc::new(tables)), normal }
    }

    pub(super) fn lookup(&self, set: &ElementSet) -> Option<usize> {
        self.index.get(set).copied()
    }
}

#[derive(Default)]
struct Registry {
    objects: Vec<Arc<GroupObject>>,
    by_table: HashMap<Vec<u32>, ObjectId>,
}

/// The noetherian form of subgroups over a collection of finite groups.
///
/// Objects are deduplicated by Cayley table, so a quotient or subgroup whose
/// relabeled table coincides with a registered group is that same object.
/// Embeddings, projections and quotient objects are created on demand and
/// memoized; creation is idempotent.
pub struct GroupForm {
    max_order: usize,
    registry: RwLock<Registry>,
    embeddings: RwLock<HashMap<SubobjectRef, GroupMorphism>>,
    projections: RwLock<HashMap<SubobjectRef, GroupMorphism>>,
}

impl fmt::Debug for GroupForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupForm({})", self.label())
    }
}

impl Default for GroupForm {
    fn default() -> Self {
        Self::with_max_order(DEFAULT_MAX_ORDER)
    }
}

impl GroupForm {
    pub fn with_max_order(max_order: usize) -> Self {
        Self {
            max_order,
            registry: RwLock::default(),
            embeddings: RwLock::default(),
            projections: RwLock::default(),
        }
    }

    /// The form over the given groups, registered in order.
    pub fn new(groups: impl IntoIterator<Item = FiniteGroup>) -> Result<Self> {
        let form = Self::default();
        for g in groups {
            form.register(g)?;
        }
        Ok(form)
    }

    pub fn max_order(&self) -> usize {
        self.max_order
    }

    /// Registers a group (materializing its subgroup lattice) and returns its
    /// handle; a group with an identical table returns the existing handle.
    pub fn register(&self, group: FiniteGroup) -> Result<ObjectId> {
        if group.order() > self.max_order {
            return Err(Error::domain(format!(
                "{} has order {}, above the configured maximum {}",
                group.name(),
                group.order(),
                self.max_order
            )));
        }
        if let Some(&id) = self.registry.read().expect("registry poisoned").by_table.get(&group.table) {
            return Ok(id);
        }
        let key = group.table.clone();
        let object = Arc::new(GroupObject::build(group));
        let mut reg = self.registry.write().expect("registry poisoned");
        if let Some(&id) = reg.by_table.get(&key) {
            return Ok(id);
        }
        let id = ObjectId(reg.objects.len());
        reg.objects.push(object);
        reg.by_table.insert(key, id);
        Ok(id)
    }

    pub(super) fn object(&self, id: ObjectId) -> Result<Arc<GroupObject>> {
        self.registry
            .read()
            .expect("registry poisoned")
            .objects
            .get(id.0)
            .cloned()
            .ok_or(Error::UnknownObject(id))
    }

    pub fn group(&self, id: ObjectId) -> Result<Arc<FiniteGroup>> {
        Ok(Arc::clone(&self.object(id)?.group))
    }

    /// Subgroups of the object in fiber order.
    pub fn subgroups(&self, id: ObjectId) -> Result<Vec<ElementSet>> {
        Ok(self.object(id)?.subgroups.clone())
    }

    pub fn subgroup(&self, x: SubobjectRef) -> Result<ElementSet> {
        self.object(x.object)?
            .subgroups
            .get(x.id)
            .cloned()
            .ok_or_else(|| Error::domain(format!("no subgroup {} in object {}", x.id, x.object)))
    }

    /// The subobject given by a subgroup literal (element list).
    pub fn subobject(&self, object: ObjectId, elements: &[usize]) -> Result<SubobjectRef> {
        let obj = self.object(object)?;
        let set = obj.group.element_set(elements)?;
        obj.lookup(&set)
            .map(|id| SubobjectRef::new(object, id))
            .ok_or_else(|| Error::domain(format!("{set} is not a subgroup of {}", obj.group.name())))
    }

    /// The subobject generated by `seed`.
    pub fn generated(&self, object: ObjectId, seed: &[usize]) -> Result<SubobjectRef> {
        let obj = self.object(object)?;
        let set = obj.group.subgroup_generated(seed)?;
        Ok(SubobjectRef::new(object, obj.lookup(&set).expect("generated sets are subgroups")))
    }

    /// A user-supplied homomorphism, validated.
    pub fn hom(&self, domain: ObjectId, codomain: ObjectId, map: &[usize]) -> Result<GroupMorphism> {
        let (d, c) = (self.group(domain)?, self.group(codomain)?);
        check_homomorphism(&d, &c, map)?;
        Ok(GroupMorphism::from_map(domain, codomain, map))
    }

    fn image_set(&self, f: &GroupMorphism, x: usize) -> Result<(Arc<GroupObject>, ElementSet)> {
        let dom = self.object(f.domain)?;
        let cod = self.object(f.codomain)?;
        let sub = dom
            .subgroups
            .get(x)
            .ok_or_else(|| Error::domain(format!("no subgroup {x} in object {}", f.domain)))?;
        let set = ElementSet::from_elements(cod.group.order(), sub.iter().map(|e| f.apply(e)));
        Ok((cod, set))
    }

    fn preimage_set(&self, f: &GroupMorphism, y: usize) -> Result<(Arc<GroupObject>, ElementSet)> {
        let dom = self.object(f.domain)?;
        let cod = self.object(f.codomain)?;
        let sub = cod
            .subgroups
            .get(y)
            .ok_or_else(|| Error::domain(format!("no subgroup {y} in object {}", f.codomain)))?;
        let set = ElementSet::from_elements(
            dom.group.order(),
            (0..dom.group.order()).filter(|&e| sub.contains(f.apply(e))),
        );
        Ok((dom, set))
    }

    /// Relational composite of a zigzag, read left to right: for every
    /// element of the first node, the set of elements of the last node it is
    /// related to.
    pub fn relational_composite(&self, zigzag: &Zigzag<GroupMorphism>) -> Result<Vec<ElementSet>> {
        let start = self.group(zigzag.start())?;
        let mut rel: Vec<ElementSet> =
            (0..start.order()).map(|x| ElementSet::from_elements(start.order(), [x])).collect();
        for (leg, &next) in zigzag.legs().iter().zip(&zigzag.nodes()[1..]) {
            let size = self.group(next)?.order();
            let f = &leg.morphism;
            rel = match leg.direction {
                LegDirection::Rightward => rel
                    .iter()
                    .map(|r| ElementSet::from_elements(size, r.iter().map(|a| f.apply(a))))
                    .collect(),
                LegDirection::Leftward => rel
                    .iter()
                    .map(|r| ElementSet::from_elements(size, (0..size).filter(|&b| r.contains(f.apply(b)))))
                    .collect(),
            };
        }
        Ok(rel)
    }
}

impl Form for GroupForm {
    type Morphism = GroupMorphism;

    fn label(&self) -> String {
        let reg = self.registry.read().expect("registry poisoned");
        let names: Vec<&str> = reg.objects.iter().map(|o| o.group.name()).collect();
        format!("groups[{}]", names.join(","))
    }

    fn objects(&self) -> Vec<ObjectId> {
        let n = self.registry.read().expect("registry poisoned").objects.len();
        (0..n).map(ObjectId).collect()
    }

    fn object_name(&self, object: ObjectId) -> Result<String> {
        Ok(self.group(object)?.name().to_string())
    }

    fn fiber(&self, object: ObjectId) -> Result<Fiber> {
        Ok(self.object(object)?.fiber.clone())
    }

    fn describe_subobject(&self, x: SubobjectRef) -> Result<String> {
        Ok(self.subgroup(x)?.to_string())
    }

    fn domain(&self, f: &GroupMorphism) -> ObjectId {
        f.domain
    }

    fn codomain(&self, f: &GroupMorphism) -> ObjectId {
        f.codomain
    }

    fn identity(&self, object: ObjectId) -> Result<GroupMorphism> {
        let n = self.group(object)?.order();
        Ok(GroupMorphism::from_map(object, object, &(0..n).collect::<Vec<_>>()))
    }

    fn compose(&self, f: &GroupMorphism, g: &GroupMorphism) -> Result<GroupMorphism> {
        if g.codomain != f.domain {
            return Err(Error::domain(format!(
                "cannot compose {:?} after {:?}: codomain {} != domain {}",
                f, g, g.codomain, f.domain
            )));
        }
        let map: Vec<usize> = (0..g.map.len()).map(|x| f.apply(g.apply(x))).collect();
        Ok(GroupMorphism::from_map(g.domain, f.codomain, &map))
    }

    fn direct_image(&self, f: &GroupMorphism, x: usize) -> Result<usize> {
        let (cod, set) = self.image_set(f, x)?;
        cod.lookup(&set)
            .ok_or_else(|| Error::integrity(format!("image {set} of subgroup {x} under {f:?} is not a subgroup")))
    }

    fn inverse_image(&self, f: &GroupMorphism, y: usize) -> Result<usize> {
        let (dom, set) = self.preimage_set(f, y)?;
        dom.lookup(&set)
            .ok_or_else(|| Error::integrity(format!("preimage {set} of subgroup {y} under {f:?} is not a subgroup")))
    }

    fn is_normal(&self, x: SubobjectRef) -> Result<bool> {
        let obj = self.object(x.object)?;
        obj.normal
            .get(x.id)
            .copied()
            .ok_or_else(|| Error::domain(format!("no subgroup {} in object {}", x.id, x.object)))
    }

    fn is_conormal(&self, x: SubobjectRef) -> Result<bool> {
        self.subgroup(x)?;
        Ok(true)
    }

    fn embedding(&self, x: SubobjectRef) -> Result<Option<GroupMorphism>> {
        if let Some(m) = self.embeddings.read().expect("cache poisoned").get(&x) {
            return Ok(Some(m.clone()));
        }
        let obj = self.object(x.object)?;
        let set = self.subgroup(x)?;
        let (sub, inclusion) = obj.group.subgroup_as_group(&set)?;
        let dom = self.register(sub)?;
        let m = GroupMorphism::from_map(dom, x.object, &inclusion);
        self.embeddings.write().expect("cache poisoned").insert(x, m.clone());
        Ok(Some(m))
    }

    fn projection(&self, x: SubobjectRef) -> Result<Option<GroupMorphism>> {
        if !self.is_normal(x)? {
            return Ok(None);
        }
        if let Some(m) = self.projections.read().expect("cache poisoned").get(&x) {
            return Ok(Some(m.clone()));
        }
        let obj = self.object(x.object)?;
        let (q, label) = obj.group.quotient(&obj.subgroups[x.id])?;
        let cod = self.register(q)?;
        let m = GroupMorphism::from_map(x.object, cod, &label);
        self.projections.write().expect("cache poisoned").insert(x, m.clone());
        Ok(Some(m))
    }

    fn factorize(&self, f: &GroupMorphism) -> Result<FactorizationTriple<GroupMorphism>> {
        let ker = self.inverse_image(f, 0)?;
        let top = self.object(f.domain)?.subgroups.len() - 1;
        let im = self.direct_image(f, top)?;
        let pi = self
            .projection(SubobjectRef::new(f.domain, ker))?
            .ok_or_else(|| Error::integrity("kernel is not normal"))?;
        let iota = self
            .embedding(SubobjectRef::new(f.codomain, im))?
            .ok_or_else(|| Error::integrity("image has no embedding"))?;
        let q_order = self.group(pi.codomain)?.order();
        let position: HashMap<usize, usize> = iota.map().into_iter().enumerate().map(|(i, e)| (e, i)).collect();
        let mut h = vec![usize::MAX; q_order];
        for g in 0..f.map.len() {
            let slot = &mut h[pi.apply(g)];
            let target = position[&f.apply(g)];
            if *slot != usize::MAX && *slot != target {
                return Err(Error::integrity(format!("{f:?} is not constant on cosets of its kernel")));
            }
            *slot = target;
        }
        let iso = self.hom(pi.codomain, iota.domain, &h)?;
        Ok(FactorizationTriple { projection_part: pi, iso_part: iso, embedding_part: iota })
    }

    fn describe_morphism(&self, f: &GroupMorphism) -> String {
        let name = |o| self.object_name(o).unwrap_or_else(|_| o.to_string());
        format!("{}->{} {:?}", name(f.domain), name(f.codomain), f.map())
    }

    fn image_oracle(&self) -> Option<Box<dyn ImageOracle<GroupMorphism> + '_>> {
        Some(Box::new(NaiveGroupOracle::new(self)))
    }

    fn induced_witness(&self, zigzag: &Zigzag<GroupMorphism>) -> Result<Option<GroupMorphism>> {
        let rel = self.relational_composite(zigzag)?;
        let mut map = Vec::with_capacity(rel.len());
        for r in &rel {
            let mut it = r.iter();
            match (it.next(), it.next()) {
                (Some(y), None) => map.push(y),
                _ => return Ok(None),
            }
        }
        Ok(Some(self.hom(zigzag.start(), zigzag.end(), &map)?))
    }

    fn group_of(&self, object: ObjectId) -> Option<Arc<FiniteGroup>> {
        self.group(object).ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::{image, kernel, kernel_image, normality, relative_normal};
    use crate::group::{builtin, cyclic};

    fn z6_form() -> (GroupForm, ObjectId) {
        let form = GroupForm::new([cyclic(6).unwrap()]).unwrap();
        (form, ObjectId(0))
    }

    #[test]
    fn projection_images() {
        let (form, g) = z6_form();
        let pi = form.projection(form.subobject(g, &[0, 3]).unwrap()).unwrap().unwrap();
        let evens = form.subobject(g, &[0, 2, 4]).unwrap();
        let img = form.direct_image(&pi, evens.id).unwrap();
        assert_eq!(img, form.fiber(pi.codomain()).unwrap().top());
        assert_eq!(form.subgroup(SubobjectRef::new(g, form.inverse_image(&pi, 0).unwrap())).unwrap().to_vec(), vec![0, 3]);
        let (ker, im) = kernel_image(&form, &pi).unwrap();
        assert_eq!(form.describe_subobject(ker).unwrap(), "{0,3}");
        assert_eq!(im.id, form.fiber(im.object).unwrap().top());
    }

    #[test]
    fn embedding_pullback() {
        let (form, g) = z6_form();
        let iota = form.embedding(form.subobject(g, &[0, 2, 4]).unwrap()).unwrap().unwrap();
        let y = form.subobject(g, &[0, 3]).unwrap();
        assert_eq!(form.inverse_image(&iota, y.id).unwrap(), 0);
        // image of the whole subgroup is {0,2,4}
        let top = form.fiber(iota.domain()).unwrap().top();
        assert_eq!(form.direct_image(&iota, top).unwrap(), form.subobject(g, &[0, 2, 4]).unwrap().id);
    }

    #[test]
    fn identity_and_zero_morphism() {
        let (form, g) = z6_form();
        let id = form.identity(g).unwrap();
        assert_eq!(kernel(&form, &id).unwrap(), 0);
        assert_eq!(image(&form, &id).unwrap(), 3);
        let zero = form.hom(g, g, &[0; 6]).unwrap();
        assert_eq!(kernel(&form, &zero).unwrap(), 3);
        assert_eq!(image(&form, &zero).unwrap(), 0);
        assert!(form.hom(g, g, &[0, 2, 4, 0, 2, 5]).is_err());
    }

    #[test]
    fn factorizations() {
        let (form, g) = z6_form();
        let id = form.identity(g).unwrap();
        let t = form.factorize(&id).unwrap();
        assert_eq!((t.projection_part.clone(), t.iso_part.clone(), t.embedding_part.clone()), (id.clone(), id.clone(), id));
        let double = form.hom(g, g, &[0, 2, 4, 0, 2, 4]).unwrap();
        let t = form.factorize(&double).unwrap();
        assert_eq!(form.group(t.projection_part.codomain()).unwrap().order(), 3);
        assert_eq!(t.embedding_part.map(), vec![0, 2, 4]);
        assert!(crate::form::factorization_defect(&form, &double, &t).unwrap().is_none());
        let pi = form.projection(form.subobject(g, &[0, 3]).unwrap()).unwrap().unwrap();
        let t = form.factorize(&pi).unwrap();
        assert_eq!(t.projection_part, pi);
        assert_eq!(t.embedding_part, form.identity(pi.codomain()).unwrap());
    }

    #[test]
    fn normality_flags_and_relative_normality() {
        let form = GroupForm::new([builtin("D8").unwrap()]).unwrap();
        let g = ObjectId(0);
        let s = form.subobject(g, &[0, 4]).unwrap();
        let n = normality(&form, s).unwrap();
        assert!(!n.is_normal && n.is_conormal && n.embedding.is_some() && n.projection.is_none());
        let whole = SubobjectRef::new(g, form.fiber(g).unwrap().top());
        assert!(!relative_normal(&form, s, whole).unwrap());
        let klein = form.subobject(g, &[0, 2, 4, 6]).unwrap();
        assert!(relative_normal(&form, s, klein).unwrap());
        assert!(relative_normal(&form, klein, klein).unwrap());
        let dual = crate::form::dualize(&form);
        let n = normality(&dual, s).unwrap();
        assert!(n.is_normal && !n.is_conormal);
    }

    #[test]
    fn objects_are_deduplicated_by_table() {
        let form = GroupForm::new([cyclic(6).unwrap(), cyclic(3).unwrap()]).unwrap();
        let g = ObjectId(0);
        let pi = form.projection(form.subobject(g, &[0, 3]).unwrap()).unwrap().unwrap();
        assert_eq!(pi.codomain(), ObjectId(1));
        let iota = form.embedding(form.subobject(g, &[0, 2, 4]).unwrap()).unwrap().unwrap();
        assert_eq!(iota.domain(), ObjectId(1));
        assert_eq!(form.objects().len(), 2);
    }

    #[test]
    fn max_order_guard() {
        let form = GroupForm::with_max_order(8);
        assert!(form.register(cyclic(9).unwrap()).is_err());
        assert!(form.register(cyclic(8).unwrap()).is_ok());
    }
}
