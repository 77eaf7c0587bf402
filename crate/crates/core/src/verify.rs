//! Brute-force conformance checks of a finite form against the axioms and
//! the theorems derived from them.
//!
//! Quantified checks range over a finite family of morphisms: identities,
//! every embedding and projection of the starting objects, the parts of their
//! factorizations, any extra morphisms supplied by the caller, and all
//! composites of up to three of these.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::{factorization_defect, image, is_embedding, is_projection, kernel, normality, Form, ObjectId, SubobjectRef};
use crate::group::iso::catalogue;
use crate::group::{FiniteGroup, GroupForm};
use crate::subfactor::Ambient;
use crate::zigzag::{canonical_zigzag, chase, ChaseDirection};

/// Default tuple budget for one suite.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

/// Everything needed to re-check a failure by hand.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub morphisms: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub subobjects: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: Status,
    pub tuples: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

/// A property that is reported but not required, such as full modularity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observation {
    pub name: String,
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConformanceReport {
    pub instance: String,
    pub suite: String,
    pub morphism_family: String,
    pub morphisms: usize,
    pub checks: Vec<CheckResult>,
    pub observations: Vec<Observation>,
    pub tuples_checked: u64,
    pub budget: u64,
    pub partial: bool,
}

impl ConformanceReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

const FAMILY_LABEL: &str =
    "identities, embeddings, projections, factorization parts and supplied morphisms, closed under composites of length <= 3";

/// The morphisms quantified over by the suites, deduplicated, in a fixed
/// order.
pub fn morphism_family<F: Form>(form: &F, extra: &[F::Morphism]) -> Result<Vec<F::Morphism>> {
    let mut seen = HashSet::new();
    let mut base = Vec::new();
    let mut add = |m: F::Morphism, out: &mut Vec<F::Morphism>| {
        if seen.insert(m.clone()) {
            out.push(m);
        }
    };
    for obj in form.objects() {
        add(form.identity(obj)?, &mut base);
        for id in form.fiber(obj)?.elements() {
            let n = normality(form, SubobjectRef::new(obj, id))?;
            for m in n.embedding.into_iter().chain(n.projection) {
                add(m, &mut base);
            }
        }
    }
    for m in extra {
        add(m.clone(), &mut base);
    }
    for m in base.clone() {
        let t = form.factorize(&m)?;
        for part in [t.projection_part, t.iso_part, t.embedding_part] {
            add(part, &mut base);
        }
    }
    let mut all = base.clone();
    let mut frontier = base.clone();
    for _ in 1..3 {
        let mut next = Vec::new();
        for g in &frontier {
            for f in &base {
                if form.domain(f) == form.codomain(g) {
                    let fg = form.compose(f, g)?;
                    if seen.insert(fg.clone()) {
                        next.push(fg);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(all)
}

struct Counter {
    used: u64,
    limit: u64,
}

impl Counter {
    fn tick(&mut self) -> Result<()> {
        self.used += 1;
        if self.used > self.limit {
            return Err(Error::Budget(format!("tuple budget of {} exhausted", self.limit)));
        }
        Ok(())
    }
}

enum Outcome {
    Pass,
    Fail(Witness),
    Skip(String),
}

struct Suite<'a, F: Form> {
    form: &'a F,
    counter: Counter,
    checks: Vec<CheckResult>,
    partial: bool,
}

impl<'a, F: Form> Suite<'a, F> {
    fn new(form: &'a F, budget: u64) -> Self {
        Self { form, counter: Counter { used: 0, limit: budget }, checks: Vec::new(), partial: false }
    }

    fn run(&mut self, name: &str, body: impl FnOnce(&'a F, &mut Counter) -> Result<Outcome>) {
        let start = self.counter.used;
        if self.partial {
            self.checks.push(CheckResult {
                name: name.into(),
                status: Status::Skipped,
                tuples: 0,
                witness: None,
                note: Some("budget exhausted".into()),
            });
            return;
        }
        let (status, witness, note) = match body(self.form, &mut self.counter) {
            Ok(Outcome::Pass) => (Status::Pass, None, None),
            Ok(Outcome::Fail(w)) => (Status::Fail, Some(w), None),
            Ok(Outcome::Skip(why)) => (Status::Skipped, None, Some(why)),
            Err(Error::Budget(why)) => {
                self.partial = true;
                self.counter.used = self.counter.limit;
                (Status::Skipped, None, Some(why))
            }
            Err(e) => (Status::Fail, Some(Witness { detail: format!("error: {e}"), ..Witness::default() }), None),
        };
        let tuples = self.counter.used.min(self.counter.limit) - start;
        self.checks.push(CheckResult { name: name.into(), status, tuples, witness, note });
    }

    fn finish(self, suite: &str, morphisms: usize, observations: Vec<Observation>) -> ConformanceReport {
        ConformanceReport {
            instance: self.form.label(),
            suite: suite.into(),
            morphism_family: FAMILY_LABEL.into(),
            morphisms,
            checks: self.checks,
            observations,
            tuples_checked: self.counter.used.min(self.counter.limit),
            budget: self.counter.limit,
            partial: self.partial,
        }
    }
}

fn sub<F: Form>(form: &F, object: ObjectId, id: usize) -> String {
    let x = SubobjectRef::new(object, id);
    match form.describe_subobject(x) {
        Ok(d) => format!("{object}:{id} {d}"),
        Err(_) => format!("{object}:{id}"),
    }
}

fn obj<F: Form>(form: &F, object: ObjectId) -> String {
    format!("{object} {}", form.object_name(object).unwrap_or_default())
}

fn fail(objects: Vec<String>, morphisms: Vec<String>, subobjects: Vec<String>, detail: impl Into<String>) -> Outcome {
    Outcome::Fail(Witness { objects, morphisms, subobjects, detail: detail.into() })
}

fn morph<F: Form>(form: &F, f: &F::Morphism) -> String {
    form.describe_morphism(f)
}

/// Objects touched by the family, plus the starting objects.
fn family_objects<F: Form>(form: &F, family: &[F::Morphism]) -> Vec<ObjectId> {
    let mut objs: Vec<ObjectId> = form.objects();
    for f in family {
        objs.push(form.domain(f));
        objs.push(form.codomain(f));
    }
    objs.sort_unstable();
    objs.dedup();
    objs
}

/// Checks the four axioms (plus the lattice laws of every fiber and the
/// agreement of the form with its independent image oracle, when it has
/// one).
pub fn verify_axioms<F: Form>(form: &F, extra: &[F::Morphism], budget: u64) -> Result<ConformanceReport> {
    let family = morphism_family(form, extra)?;
    let objects = family_objects(form, &family);
    let mut suite = Suite::new(form, budget);
    let fam = &family;
    let objs = &objects;

    suite.run("lattice laws", |form, c| {
        for &o in objs {
            c.tick()?;
            if let Some(v) = form.fiber(o)?.lattice_law_violation() {
                return Ok(fail(vec![obj(form, o)], vec![], vec![], v));
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("independent image oracle", |form, c| {
        let Some(oracle) = form.image_oracle() else {
            return Ok(Outcome::Skip("instance provides no independent oracle".into()));
        };
        for &o in objs {
            let fiber = form.fiber(o)?;
            for a in fiber.elements() {
                for b in fiber.elements() {
                    c.tick()?;
                    let (m, j) = (oracle.meet(o, a, b)?, oracle.join(o, a, b)?);
                    if m != fiber.meet(a, b) || j != fiber.join(a, b) {
                        return Ok(fail(
                            vec![obj(form, o)],
                            vec![],
                            vec![sub(form, o, a), sub(form, o, b)],
                            format!("{}: meet/join disagree with the fiber tables", oracle.label()),
                        ));
                    }
                }
            }
        }
        for f in fam {
            let (d, e) = (form.domain(f), form.codomain(f));
            for x in form.fiber(d)?.elements() {
                c.tick()?;
                if oracle.direct_image(f, x)? != form.direct_image(f, x)? {
                    return Ok(fail(vec![], vec![morph(form, f)], vec![sub(form, d, x)], "direct image disagrees with the oracle"));
                }
            }
            for y in form.fiber(e)?.elements() {
                c.tick()?;
                if oracle.inverse_image(f, y)? != form.inverse_image(f, y)? {
                    return Ok(fail(vec![], vec![morph(form, f)], vec![sub(form, e, y)], "inverse image disagrees with the oracle"));
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("adjunction", |form, c| {
        let oracle = form.image_oracle();
        for f in fam {
            let (d, e) = (form.domain(f), form.codomain(f));
            let (fd, fe) = (form.fiber(d)?, form.fiber(e)?);
            for x in fd.elements() {
                let fx = form.direct_image(f, x)?;
                for y in fe.elements() {
                    c.tick()?;
                    let a = fe.leq(fx, y);
                    let b = fd.leq(x, form.inverse_image(f, y)?);
                    let m = match &oracle {
                        Some(o) => o.maps_into(f, x, y)?,
                        None => a,
                    };
                    if a != b || a != m {
                        return Ok(fail(
                            vec![],
                            vec![morph(form, f)],
                            vec![sub(form, d, x), sub(form, e, y)],
                            format!("f(X) <= Y is {a}, X maps into Y is {m}, X <= f^-1(Y) is {b}"),
                        ));
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("functoriality", |form, c| {
        for &o in objs {
            let id = form.identity(o)?;
            for x in form.fiber(o)?.elements() {
                c.tick()?;
                if form.direct_image(&id, x)? != x || form.inverse_image(&id, x)? != x {
                    return Ok(fail(vec![obj(form, o)], vec![morph(form, &id)], vec![sub(form, o, x)], "identity does not act as identity"));
                }
            }
        }
        for g in fam {
            for f in fam {
                if form.domain(f) != form.codomain(g) {
                    continue;
                }
                let fg = form.compose(f, g)?;
                let (d, e) = (form.domain(g), form.codomain(f));
                for x in form.fiber(d)?.elements() {
                    c.tick()?;
                    if form.direct_image(&fg, x)? != form.direct_image(f, form.direct_image(g, x)?)? {
                        return Ok(fail(vec![], vec![morph(form, f), morph(form, g)], vec![sub(form, d, x)], "(fg)(X) != f(g(X))"));
                    }
                }
                for y in form.fiber(e)?.elements() {
                    c.tick()?;
                    if form.inverse_image(&fg, y)? != form.inverse_image(g, form.inverse_image(f, y)?)? {
                        return Ok(fail(vec![], vec![morph(form, f), morph(form, g)], vec![sub(form, e, y)], "(fg)^-1(Y) != g^-1(f^-1(Y))"));
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("image identities", |form, c| {
        for f in fam {
            let (d, e) = (form.domain(f), form.codomain(f));
            let (fd, fe) = (form.fiber(d)?, form.fiber(e)?);
            let ker = form.inverse_image(f, fe.bottom())?;
            let im = form.direct_image(f, fd.top())?;
            for x in fd.elements() {
                c.tick()?;
                if form.inverse_image(f, form.direct_image(f, x)?)? != fd.join(x, ker) {
                    return Ok(fail(vec![], vec![morph(form, f)], vec![sub(form, d, x)], "f^-1 f(X) != X v Ker f"));
                }
            }
            for y in fe.elements() {
                c.tick()?;
                if form.direct_image(f, form.inverse_image(f, y)?)? != fe.meet(y, im) {
                    return Ok(fail(vec![], vec![morph(form, f)], vec![sub(form, e, y)], "f f^-1(Y) != Y ^ Im f"));
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("factorization", |form, c| {
        for f in fam {
            c.tick()?;
            let t = form.factorize(f)?;
            if let Some(defect) = factorization_defect(form, f, &t)? {
                return Ok(fail(
                    vec![],
                    vec![morph(form, f), morph(form, &t.projection_part), morph(form, &t.iso_part), morph(form, &t.embedding_part)],
                    vec![],
                    defect,
                ));
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("normality witnesses", |form, c| {
        for &o in objs {
            for x in form.fiber(o)?.elements() {
                c.tick()?;
                let n = normality(form, SubobjectRef::new(o, x))?;
                if let Some(i) = &n.embedding {
                    if form.codomain(i) != o || !is_embedding(form, i)? || image(form, i)? != x {
                        return Ok(fail(vec![obj(form, o)], vec![morph(form, i)], vec![sub(form, o, x)], "embedding witness is not an embedding with the claimed image"));
                    }
                }
                if let Some(p) = &n.projection {
                    if form.domain(p) != o || !is_projection(form, p)? || kernel(form, p)? != x {
                        return Ok(fail(vec![obj(form, o)], vec![morph(form, p)], vec![sub(form, o, x)], "projection witness is not a projection with the claimed kernel"));
                    }
                }
            }
        }
        for f in fam {
            c.tick()?;
            let (d, e) = (form.domain(f), form.codomain(f));
            let (k, i) = (kernel(form, f)?, image(form, f)?);
            if !form.is_normal(SubobjectRef::new(d, k))? {
                return Ok(fail(vec![], vec![morph(form, f)], vec![sub(form, d, k)], "a kernel is not flagged normal"));
            }
            if !form.is_conormal(SubobjectRef::new(e, i))? {
                return Ok(fail(vec![], vec![morph(form, f)], vec![sub(form, e, i)], "an image is not flagged conormal"));
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("normal joins and conormal meets", |form, c| {
        for &o in objs {
            let fiber = form.fiber(o)?;
            let flags = fiber
                .elements()
                .map(|x| Ok((form.is_normal(SubobjectRef::new(o, x))?, form.is_conormal(SubobjectRef::new(o, x))?)))
                .collect::<Result<Vec<_>>>()?;
            for a in fiber.elements() {
                for b in fiber.elements() {
                    c.tick()?;
                    if flags[a].0 && flags[b].0 && !flags[fiber.join(a, b)].0 {
                        return Ok(fail(vec![obj(form, o)], vec![], vec![sub(form, o, a), sub(form, o, b)], "join of two normals is not normal"));
                    }
                    if flags[a].1 && flags[b].1 && !flags[fiber.meet(a, b)].1 {
                        return Ok(fail(vec![obj(form, o)], vec![], vec![sub(form, o, a), sub(form, o, b)], "meet of two conormals is not conormal"));
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    });

    Ok(suite.finish("axioms", family.len(), Vec::new()))
}

/// `x <= z` and `(x v y) ^ z != x v (y ^ z)`.
fn modular_fails(fiber: &crate::lattice::Fiber, x: usize, y: usize, z: usize) -> bool {
    fiber.leq(x, z) && fiber.meet(fiber.join(x, y), z) != fiber.join(x, fiber.meet(y, z))
}

/// Checks the derived theorems: lattice isomorphism, the restricted and less
/// restricted modular laws, Frobenius reciprocity and its dual for normal
/// subobjects, the two relative-normality lemmas, and the behaviour of
/// chasing along the zigzag of a subfactor.
pub fn verify_theorems<F: Form>(form: &F, extra: &[F::Morphism], budget: u64) -> Result<ConformanceReport> {
    let family = morphism_family(form, extra)?;
    let objects = family_objects(form, &family);
    let mut suite = Suite::new(form, budget);
    let fam = &family;
    let objs = &objects;

    suite.run("lattice isomorphism theorem", |form, c| {
        for f in fam {
            let (d, e) = (form.domain(f), form.codomain(f));
            let (fd, fe) = (form.fiber(d)?, form.fiber(e)?);
            let (k, i) = (kernel(form, f)?, image(form, f)?);
            for x in fd.interval(k, fd.top()) {
                c.tick()?;
                let fx = form.direct_image(f, x)?;
                if !fe.leq(fx, i) || form.inverse_image(f, fx)? != x {
                    return Ok(fail(vec![], vec![morph(form, f)], vec![sub(form, d, x)], "direct image is not inverted on [Ker f, 1]"));
                }
            }
            for y in fe.interval(fe.bottom(), i) {
                c.tick()?;
                let fy = form.inverse_image(f, y)?;
                if !fd.leq(k, fy) || form.direct_image(f, fy)? != y {
                    return Ok(fail(vec![], vec![morph(form, f)], vec![sub(form, e, y)], "inverse image is not inverted on [0, Im f]"));
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("restricted modular law", |form, c| {
        for &o in objs {
            let amb = Ambient::new(form, o)?;
            let fiber = amb.fiber();
            let normal = fiber.elements().map(|x| form.is_normal(amb.subobject(x))).collect::<Result<Vec<_>>>()?;
            for x in fiber.elements() {
                for z in fiber.elements() {
                    if !fiber.leq(x, z) {
                        continue;
                    }
                    for y in fiber.elements() {
                        c.tick()?;
                        let first = normal[y] && amb.is_conormal(z)?;
                        let second = amb.is_conormal(y)? && normal[x];
                        if (first || second) && modular_fails(fiber, x, y, z) {
                            return Ok(fail(
                                vec![obj(form, o)],
                                vec![],
                                vec![sub(form, o, x), sub(form, o, y), sub(form, o, z)],
                                "modular law fails for X <= Z under the restricted hypotheses",
                            ));
                        }
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("less restricted modular law", |form, c| {
        for &o in objs {
            let amb = Ambient::new(form, o)?;
            let fiber = amb.fiber();
            for x in fiber.elements() {
                for z in fiber.elements() {
                    if !fiber.leq(x, z) {
                        continue;
                    }
                    for y in fiber.elements() {
                        if !modular_fails(fiber, x, y, z) {
                            c.tick()?;
                            continue;
                        }
                        // the law fails here; no S may satisfy either set of hypotheses
                        for s in fiber.elements() {
                            c.tick()?;
                            let first = fiber.leq(z, s) && amb.is_conormal(z)? && fiber.leq(y, s) && amb.relative_normal(y, s)?;
                            let second = amb.is_conormal(y)?
                                && fiber.leq(y, s)
                                && fiber.leq(z, s)
                                && fiber.leq(x, s)
                                && amb.relative_normal(x, s)?;
                            if first || second {
                                return Ok(fail(
                                    vec![obj(form, o)],
                                    vec![],
                                    vec![sub(form, o, x), sub(form, o, y), sub(form, o, z), sub(form, o, s)],
                                    "modular law fails although some S satisfies the less restricted hypotheses",
                                ));
                            }
                        }
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("frobenius reciprocity", |form, c| {
        for f in fam {
            let (d, e) = (form.domain(f), form.codomain(f));
            let (fd, fe) = (form.fiber(d)?, form.fiber(e)?);
            for x in fd.elements() {
                if !form.is_conormal(SubobjectRef::new(d, x))? {
                    continue;
                }
                let fx = form.direct_image(f, x)?;
                for y in fe.elements() {
                    c.tick()?;
                    if form.direct_image(f, fd.meet(form.inverse_image(f, y)?, x))? != fe.meet(y, fx) {
                        return Ok(fail(vec![], vec![morph(form, f)], vec![sub(form, d, x), sub(form, e, y)], "f(f^-1(Y) ^ X) != Y ^ f(X) for conormal X"));
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("dual frobenius reciprocity for normal subobjects", |form, c| {
        for f in fam {
            let (d, e) = (form.domain(f), form.codomain(f));
            let (fd, fe) = (form.fiber(d)?, form.fiber(e)?);
            for y in fe.elements() {
                if !form.is_normal(SubobjectRef::new(e, y))? {
                    continue;
                }
                let fy = form.inverse_image(f, y)?;
                for x in fd.elements() {
                    c.tick()?;
                    if form.inverse_image(f, fe.join(form.direct_image(f, x)?, y))? != fd.join(x, fy) {
                        return Ok(fail(vec![], vec![morph(form, f)], vec![sub(form, d, x), sub(form, e, y)], "f^-1(f(X) v Y) != X v f^-1(Y) for normal Y"));
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("relative normality under meets", |form, c| {
        for &o in objs {
            let amb = Ambient::new(form, o)?;
            let fiber = amb.fiber();
            for w in fiber.elements() {
                for x in fiber.elements() {
                    if !fiber.leq(w, x) || !amb.relative_normal(w, x)? {
                        continue;
                    }
                    for y in fiber.elements() {
                        c.tick()?;
                        if amb.is_conormal(y)? && !amb.relative_normal(fiber.meet(w, y), fiber.meet(x, y))? {
                            return Ok(fail(vec![obj(form, o)], vec![], vec![sub(form, o, w), sub(form, o, x), sub(form, o, y)], "W ⊲ X, Y conormal, but W ^ Y is not normal in X ^ Y"));
                        }
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("relative normality under joins", |form, c| {
        for &o in objs {
            let amb = Ambient::new(form, o)?;
            let fiber = amb.fiber();
            for w in fiber.elements() {
                for x in fiber.elements() {
                    if !fiber.leq(w, x) || !amb.relative_normal(w, x)? {
                        continue;
                    }
                    for y in fiber.elements() {
                        c.tick()?;
                        let xy = fiber.join(x, y);
                        if amb.relative_normal(y, xy)? && !amb.relative_normal(fiber.join(w, y), xy)? {
                            return Ok(fail(vec![obj(form, o)], vec![], vec![sub(form, o, w), sub(form, o, x), sub(form, o, y)], "W ⊲ X, Y ⊲ X v Y, but W v Y is not normal in X v Y"));
                        }
                    }
                }
            }
        }
        Ok(Outcome::Pass)
    });

    suite.run("subfactor zigzag chasing", |form, c| {
        for &o in objs {
            let amb = Ambient::new(form, o)?;
            let fiber = amb.fiber();
            for sf in amb.subfactors()? {
                let z = canonical_zigzag(form, o, sf)?;
                let q = form.fiber(z.end())?;
                let wit = |detail: &str| {
                    fail(vec![obj(form, o), obj(form, z.end())], vec![], vec![sub(form, o, sf.lo), sub(form, o, sf.hi)], detail)
                };
                for x in fiber.elements() {
                    c.tick()?;
                    let there = chase(form, &z, amb.subobject(x), ChaseDirection::Forward)?;
                    let back = chase(form, &z, there, ChaseDirection::Backward)?;
                    if back.id != fiber.join(fiber.meet(x, sf.hi), sf.lo) {
                        return Ok(wit("forward then backward chase is not (Z ^ Y) v X"));
                    }
                }
                let mut hit = Vec::new();
                for w in q.elements() {
                    c.tick()?;
                    let back = chase(form, &z, SubobjectRef::new(z.end(), w), ChaseDirection::Backward)?;
                    let again = chase(form, &z, back, ChaseDirection::Forward)?;
                    if again.id != w {
                        return Ok(wit("backward then forward chase is not the identity"));
                    }
                    hit.push(back.id);
                }
                hit.sort_unstable();
                let mut expected = fiber.interval(sf.lo, sf.hi);
                expected.sort_unstable();
                if hit != expected {
                    return Ok(wit("backward chase does not biject onto [X, Y]"));
                }
            }
        }
        Ok(Outcome::Pass)
    });

    let mut observations = Vec::new();
    for &o in objs {
        let fiber = form.fiber(o)?;
        let w = fiber.modularity_witness();
        observations.push(Observation {
            name: format!("unrestricted modular law in {}", obj(form, o)),
            holds: w.is_none(),
            witness: w.map(|(x, y, z)| Witness {
                objects: vec![obj(form, o)],
                morphisms: vec![],
                subobjects: vec![sub(form, o, x), sub(form, o, y), sub(form, o, z)],
                detail: "X <= Z but (X v Y) ^ Z != X v (Y ^ Z)".into(),
            }),
        });
    }

    Ok(suite.finish("theorems", family.len(), observations))
}

/// The first group of the catalogue (by order) whose subgroup lattice is not
/// modular, with a failing triple of subgroups.
pub fn smallest_nonmodular_group(max_order: usize) -> Result<Option<(FiniteGroup, [Vec<usize>; 3])>> {
    let mut groups: Vec<&FiniteGroup> = catalogue().iter().filter(|g| g.order() <= max_order).collect();
    groups.sort_by_key(|g| g.order());
    for g in groups {
        let form = GroupForm::new([g.clone()])?;
        let o = ObjectId(0);
        if let Some((x, y, z)) = form.fiber(o)?.modularity_witness() {
            let set = |i| form.subgroup(SubobjectRef::new(o, i)).map(|s| s.to_vec());
            return Ok(Some((g.clone(), [set(x)?, set(y)?, set(z)?])));
        }
    }
    Ok(None)
}

/// Both suites.
pub fn verify_all<F: Form>(form: &F, extra: &[F::Morphism], budget: u64) -> Result<Vec<ConformanceReport>> {
    Ok(vec![verify_axioms(form, extra, budget)?, verify_theorems(form, extra, budget)?])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::dualize;
    use crate::group::builtin;

    #[test]
    fn z6_passes_both_suites() {
        let form = GroupForm::new([builtin("Z6").unwrap()]).unwrap();
        for r in verify_all(&form, &[], DEFAULT_BUDGET).unwrap() {
            assert!(r.passed(), "{:#?}", r.failures().collect::<Vec<_>>());
            assert!(!r.partial);
        }
    }

    #[test]
    fn dual_z6_passes() {
        let form = GroupForm::new([builtin("Z6").unwrap()]).unwrap();
        let dual = dualize(&form);
        for r in verify_all(&dual, &[], DEFAULT_BUDGET).unwrap() {
            assert!(r.passed(), "{:#?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn d8_reports_nonmodularity_as_observation() {
        let form = GroupForm::new([builtin("D8").unwrap()]).unwrap();
        let r = verify_theorems(&form, &[], DEFAULT_BUDGET).unwrap();
        assert!(r.passed());
        let d8 = r.observations.iter().find(|o| o.name.contains("D8")).unwrap();
        assert!(!d8.holds);
        assert_eq!(d8.witness.as_ref().unwrap().subobjects.len(), 3);
    }

    #[test]
    fn tiny_budget_gives_partial_report() {
        let form = GroupForm::new([builtin("S3").unwrap()]).unwrap();
        let r = verify_axioms(&form, &[], 10).unwrap();
        assert!(r.partial);
        assert!(r.passed());
        assert!(r.checks.iter().any(|c| c.status == Status::Skipped));
        assert_eq!(r.tuples_checked, 10);
    }

    #[test]
    fn smallest_nonmodular_is_d8() {
        let (g, [x, y, z]) = smallest_nonmodular_group(16).unwrap().unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.name(), "D8");
        let form = GroupForm::new([g]).unwrap();
        let o = ObjectId(0);
        let fiber = form.fiber(o).unwrap();
        let id = |s: &[usize]| form.subobject(o, s).unwrap().id;
        assert!(modular_fails(&fiber, id(&x), id(&y), id(&z)));
    }
}
