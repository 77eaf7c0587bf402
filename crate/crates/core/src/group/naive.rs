//! Element-set arithmetic straight off the Cayley tables, used by the axiom
//! verifier as an oracle for the group form. Shares no code paths with the
//! form's own image maps or lattice tables.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::form::{ImageOracle, ObjectId};

use super::form::{GroupForm, GroupMorphism};
use super::FiniteGroup;

pub struct NaiveGroupOracle<'a> {
    form: &'a GroupForm,
}

impl<'a> NaiveGroupOracle<'a> {
    pub fn new(form: &'a GroupForm) -> Self {
        Self { form }
    }

    fn elements(&self, object: ObjectId, id: usize) -> Result<Vec<usize>> {
        let obj = self.form.object(object)?;
        obj.subgroups
            .get(id)
            .map(|s| s.to_vec())
            .ok_or_else(|| Error::domain(format!("no subgroup {id} in {object}")))
    }

    /// Closes a set under products by squaring until nothing new appears.
    fn closure(group: &FiniteGroup, seed: impl IntoIterator<Item = usize>) -> Vec<usize> {
        let mut set: BTreeSet<usize> = seed.into_iter().collect();
        set.insert(0);
        loop {
            let current: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &a in &current {
                for &b in &current {
                    set.insert(group.mul(a, b));
                }
            }
            if set.len() == before {
                return set.into_iter().collect();
            }
        }
    }

    fn locate(&self, object: ObjectId, elements: &[usize]) -> Result<usize> {
        let obj = self.form.object(object)?;
        obj.subgroups
            .iter()
            .position(|s| s.to_vec() == elements)
            .ok_or_else(|| Error::integrity(format!("{elements:?} is missing from the fiber of {object}")))
    }
}

impl ImageOracle<GroupMorphism> for NaiveGroupOracle<'_> {
    fn label(&self) -> String {
        "naive element-set arithmetic".into()
    }

    fn direct_image(&self, f: &GroupMorphism, x: usize) -> Result<usize> {
        let cod = self.form.group(f.codomain())?;
        let image = Self::closure(&cod, self.elements(f.domain(), x)?.into_iter().map(|e| f.apply(e)));
        self.locate(f.codomain(), &image)
    }

    fn inverse_image(&self, f: &GroupMorphism, y: usize) -> Result<usize> {
        let dom = self.form.group(f.domain())?;
        let target = self.elements(f.codomain(), y)?;
        let pre: Vec<usize> = (0..dom.order()).filter(|&e| target.contains(&f.apply(e))).collect();
        self.locate(f.domain(), &pre)
    }

    fn meet(&self, object: ObjectId, a: usize, b: usize) -> Result<usize> {
        let (xa, xb) = (self.elements(object, a)?, self.elements(object, b)?);
        let common: Vec<usize> = xa.into_iter().filter(|e| xb.contains(e)).collect();
        self.locate(object, &common)
    }

    fn join(&self, object: ObjectId, a: usize, b: usize) -> Result<usize> {
        let group = self.form.group(object)?;
        let seed = self.elements(object, a)?.into_iter().chain(self.elements(object, b)?);
        self.locate(object, &Self::closure(&group, seed))
    }

    fn maps_into(&self, f: &GroupMorphism, x: usize, y: usize) -> Result<bool> {
        let target = self.elements(f.codomain(), y)?;
        Ok(self.elements(f.domain(), x)?.into_iter().all(|e| target.contains(&f.apply(e))))
    }
}
