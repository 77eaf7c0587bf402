//! Zigzags of morphisms, chasing subobjects along them, and the induced
//! homomorphism / isomorphism criteria.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::{is_isomorphism, relative_normal, Form, ObjectId, SubobjectRef};
use crate::subfactor::Interval;

/// Orientation of one leg, reading the zigzag left to right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LegDirection {
    /// The morphism goes from the left node to the right node.
    #[serde(rename = "R")]
    Rightward,
    /// The morphism goes from the right node to the left node.
    #[serde(rename = "L")]
    Leftward,
}

impl LegDirection {
    pub fn flipped(self) -> Self {
        match self {
            LegDirection::Rightward => LegDirection::Leftward,
            LegDirection::Leftward => LegDirection::Rightward,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ChaseDirection {
    Forward,
    Backward,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Leg<M> {
    pub morphism: M,
    pub direction: LegDirection,
}

impl<M> Leg<M> {
    pub fn right(morphism: M) -> Self {
        Self { morphism, direction: LegDirection::Rightward }
    }

    pub fn left(morphism: M) -> Self {
        Self { morphism, direction: LegDirection::Leftward }
    }
}

/// `G₀ ~ G₁ ~ … ~ Gₙ` with legs of either orientation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Zigzag<M> {
    nodes: Vec<ObjectId>,
    legs: Vec<Leg<M>>,
}

impl<M: Clone> Zigzag<M> {
    /// The zigzag with a single node and no legs.
    pub fn empty(start: ObjectId) -> Self {
        Self { nodes: vec![start], legs: Vec::new() }
    }

    /// Builds a zigzag starting at `start`, checking that every leg attaches
    /// to the node reached so far.
    pub fn new<F: Form<Morphism = M>>(form: &F, start: ObjectId, legs: Vec<Leg<M>>) -> Result<Self> {
        let mut z = Self::empty(start);
        for leg in legs {
            z.push(form, leg)?;
        }
        Ok(z)
    }

    pub fn push<F: Form<Morphism = M>>(&mut self, form: &F, leg: Leg<M>) -> Result<()> {
        let here = self.end();
        let (from, to) = match leg.direction {
            LegDirection::Rightward => (form.domain(&leg.morphism), form.codomain(&leg.morphism)),
            LegDirection::Leftward => (form.codomain(&leg.morphism), form.domain(&leg.morphism)),
        };
        if from != here {
            return Err(Error::domain(format!(
                "leg {} does not attach: expected node {here}, leg starts at {from}",
                self.legs.len() + 1
            )));
        }
        self.nodes.push(to);
        self.legs.push(leg);
        Ok(())
    }

    pub fn nodes(&self) -> &[ObjectId] {
        &self.nodes
    }

    pub fn legs(&self) -> &[Leg<M>] {
        &self.legs
    }

    pub fn len(&self) -> usize {
        self.legs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.legs.is_empty()
    }

    pub fn start(&self) -> ObjectId {
        self.nodes[0]
    }

    pub fn end(&self) -> ObjectId {
        *self.nodes.last().expect("a zigzag has at least one node")
    }

    /// The same diagram read right to left.
    pub fn reversed(&self) -> Self {
        let mut nodes = self.nodes.clone();
        nodes.reverse();
        let legs = self
            .legs
            .iter()
            .rev()
            .map(|l| Leg { morphism: l.morphism.clone(), direction: l.direction.flipped() })
            .collect();
        Self { nodes, legs }
    }

    /// Glues `other` after `self`; the end of `self` must be the start of `other`.
    pub fn concat(&self, other: &Self) -> Result<Self> {
        if self.end() != other.start() {
            return Err(Error::domain(format!(
                "cannot glue zigzags: {} != {}",
                self.end(),
                other.start()
            )));
        }
        let mut nodes = self.nodes.clone();
        nodes.extend_from_slice(&other.nodes[1..]);
        let mut legs = self.legs.clone();
        legs.extend(other.legs.iter().cloned());
        Ok(Self { nodes, legs })
    }
}

/// Chases a subobject along a zigzag.
///
/// Forward chasing starts at the first node and applies the direct image
/// along rightward legs and the inverse image along leftward ones; backward
/// chasing is forward chasing of the reversed zigzag.
pub fn chase<F: Form>(
    form: &F,
    zigzag: &Zigzag<F::Morphism>,
    x: SubobjectRef,
    direction: ChaseDirection,
) -> Result<SubobjectRef> {
    let (expected, legs): (ObjectId, Box<dyn Iterator<Item = (&Leg<F::Morphism>, bool)>>) = match direction {
        ChaseDirection::Forward => (zigzag.start(), Box::new(zigzag.legs.iter().map(|l| (l, l.direction == LegDirection::Rightward)))),
        ChaseDirection::Backward => (zigzag.end(), Box::new(zigzag.legs.iter().rev().map(|l| (l, l.direction == LegDirection::Leftward)))),
    };
    if x.object != expected {
        return Err(Error::domain(format!(
            "subobject lives in {}, chase starts at {expected}",
            x.object
        )));
    }
    let mut current = x;
    for (leg, along) in legs {
        current = if along {
            SubobjectRef::new(form.codomain(&leg.morphism), form.direct_image(&leg.morphism, current.id)?)
        } else {
            SubobjectRef::new(form.domain(&leg.morphism), form.inverse_image(&leg.morphism, current.id)?)
        };
    }
    Ok(current)
}

/// The zigzag `G ← Y → Y/X` of a subfactor `X ⊲ Y` of `G`: the embedding of
/// `Y` followed by the projection at `ι_Y⁻¹(X)`.
pub fn canonical_zigzag<F: Form>(form: &F, object: ObjectId, sf: Interval) -> Result<Zigzag<F::Morphism>> {
    let (lo, hi) = (SubobjectRef::new(object, sf.lo), SubobjectRef::new(object, sf.hi));
    if !relative_normal(form, lo, hi)? {
        return Err(Error::domain(format!(
            "[{}, {}] is not a subfactor",
            form.describe_subobject(lo)?,
            form.describe_subobject(hi)?
        )));
    }
    let iota = form.embedding(hi)?.ok_or_else(|| Error::integrity("conormal subobject without embedding"))?;
    let pulled = SubobjectRef::new(form.domain(&iota), form.inverse_image(&iota, sf.lo)?);
    let pi = form
        .projection(pulled)?
        .ok_or_else(|| Error::integrity("normal subobject without projection"))?;
    Zigzag::new(form, object, vec![Leg::left(iota), Leg::right(pi)])
}

/// A morphism induced by a zigzag. The witness is present when the instance
/// can exhibit the morphism at element level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedHom<M> {
    pub zigzag: Zigzag<M>,
    pub witness: Option<M>,
}

fn ends<F: Form>(form: &F, z: &Zigzag<F::Morphism>) -> Result<(crate::lattice::Fiber, crate::lattice::Fiber)> {
    Ok((form.fiber(z.start())?, form.fiber(z.end())?))
}

/// Whether the zigzag induces a morphism: chasing the least subobject of
/// the first node forward gives the least subobject of the last node, and
/// chasing the largest subobject of the last node backward gives the
/// largest subobject of the first.
///
/// When the instance supplies an element-level witness, its image maps are
/// checked against chasing; a disagreement is an integrity error.
pub fn induces_hom<F: Form>(form: &F, zigzag: &Zigzag<F::Morphism>) -> Result<Option<InducedHom<F::Morphism>>> {
    let (first, last) = ends(form, zigzag)?;
    let (s, e) = (zigzag.start(), zigzag.end());
    let fwd_bottom = chase(form, zigzag, SubobjectRef::new(s, first.bottom()), ChaseDirection::Forward)?;
    let bwd_top = chase(form, zigzag, SubobjectRef::new(e, last.top()), ChaseDirection::Backward)?;
    if fwd_bottom.id != last.bottom() || bwd_top.id != first.top() {
        return Ok(None);
    }
    let witness = form.induced_witness(zigzag)?;
    if let Some(w) = &witness {
        if form.domain(w) != s || form.codomain(w) != e {
            return Err(Error::integrity("induced witness has the wrong endpoints"));
        }
        for x in first.elements() {
            let chased = chase(form, zigzag, SubobjectRef::new(s, x), ChaseDirection::Forward)?;
            if form.direct_image(w, x)? != chased.id {
                return Err(Error::integrity(format!("direct image of the induced morphism disagrees with chasing at {x}")));
            }
        }
        for y in last.elements() {
            let chased = chase(form, zigzag, SubobjectRef::new(e, y), ChaseDirection::Backward)?;
            if form.inverse_image(w, y)? != chased.id {
                return Err(Error::integrity(format!("inverse image of the induced morphism disagrees with chasing at {y}")));
            }
        }
    }
    Ok(Some(InducedHom { zigzag: zigzag.clone(), witness }))
}

/// Whether the zigzag induces an isomorphism: `[0, 1]` at each end chases to
/// `[0, 1]` at the other end.
pub fn induces_iso<F: Form>(form: &F, zigzag: &Zigzag<F::Morphism>) -> Result<bool> {
    let (first, last) = ends(form, zigzag)?;
    let (s, e) = (zigzag.start(), zigzag.end());
    let fwd = |x| chase(form, zigzag, SubobjectRef::new(s, x), ChaseDirection::Forward).map(|r| r.id);
    let bwd = |y| chase(form, zigzag, SubobjectRef::new(e, y), ChaseDirection::Backward).map(|r| r.id);
    let verdict = fwd(first.bottom())? == last.bottom()
        && fwd(first.top())? == last.top()
        && bwd(last.bottom())? == first.bottom()
        && bwd(last.top())? == first.top();
    if let Some(induced) = induces_hom(form, zigzag)? {
        if let Some(w) = &induced.witness {
            if is_isomorphism(form, w)? != verdict {
                return Err(Error::integrity("induced witness disagrees with the isomorphism criterion"));
            }
        }
    } else if verdict {
        return Err(Error::integrity("isomorphism criterion holds but no morphism is induced"));
    }
    Ok(verdict)
}
