//! Subnormal series, Schreier refinement, projective isomorphism, and the
//! checks refuting two claims about the refinement being the coarsest one:
//! a containment claim for subfactors inside a step, and minimality itself.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::form::{Form, ObjectId};
use crate::group::iso::identify;
use crate::subfactor::{Ambient, Interval};
use crate::zigzag::canonical_zigzag;

/// Fibers larger than this are refused by [`coarsest_check`].
pub const MAX_COARSEST_FIBER: usize = 20;

/// `top = X₀ ⊃ X₁ ⊃ … ⊃ X_n = bottom` with every step a subfactor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubnormalSeries {
    pub object: ObjectId,
    pub terms: Vec<usize>,
}

impl SubnormalSeries {
    /// Number of steps.
    pub fn len(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The `i`-th step `[X_{i+1}, X_i]`.
    pub fn step(&self, i: usize) -> Interval {
        Interval::new(self.terms[i + 1], self.terms[i])
    }

    pub fn steps(&self) -> impl Iterator<Item = Interval> + '_ {
        (0..self.len()).map(|i| self.step(i))
    }

    /// Every term of `other` is a term of `self`.
    pub fn refines(&self, other: &SubnormalSeries) -> bool {
        other.terms.iter().all(|t| self.terms.contains(t))
    }
}

pub fn validate_series<F: Form>(amb: &Ambient<'_, F>, terms: &[usize]) -> Result<SubnormalSeries> {
    let fiber = amb.fiber();
    let (Some(&first), Some(&last)) = (terms.first(), terms.last()) else {
        return Err(Error::validation("a series needs at least one term"));
    };
    for &t in terms {
        if !fiber.contains(t) {
            return Err(Error::validation(format!("term {t} is not in the fiber")));
        }
    }
    if first != fiber.top() {
        return Err(Error::validation(format!("series starts at {}, not at the top", amb.describe(first))));
    }
    if last != fiber.bottom() {
        return Err(Error::validation(format!("series ends at {}, not at the bottom", amb.describe(last))));
    }
    for (i, w) in terms.windows(2).enumerate() {
        let (upper, lower) = (w[0], w[1]);
        if upper == lower {
            return Err(Error::validation(format!("step {i}: term {} is repeated", amb.describe(upper))));
        }
        if !fiber.leq(lower, upper) {
            return Err(Error::validation(format!(
                "step {i}: {} is not contained in {}",
                amb.describe(lower),
                amb.describe(upper)
            )));
        }
        if !amb.relative_normal(lower, upper)? {
            return Err(Error::validation(format!(
                "step {i}: {} is not normal in {}",
                amb.describe(lower),
                amb.describe(upper)
            )));
        }
    }
    if terms.len() == 1 && fiber.size() > 1 {
        return Err(Error::validation("series has a single term but the fiber is not trivial"));
    }
    Ok(SubnormalSeries { object: amb.object(), terms: terms.to_vec() })
}

fn same_object<F: Form>(amb: &Ambient<'_, F>, s: &SubnormalSeries) -> Result<()> {
    if s.object != amb.object() {
        return Err(Error::domain(format!("series lives in {}, expected {}", s.object, amb.object())));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RefinementResult {
    pub left: SubnormalSeries,
    pub right: SubnormalSeries,
    /// `Y_j^i`, all `mn + 1` terms, duplicates kept.
    pub raw_left: Vec<usize>,
    /// `X_i^j`, all `mn + 1` terms, duplicates kept.
    pub raw_right: Vec<usize>,
    /// `(step of left, step of right)` pairs.
    pub matching: Vec<(usize, usize)>,
}

/// Terms `Y_j^i = Y_j[X_{i+1}, X_i]` for `i < n`, `j < m`, then `X_n`.
fn raw_refinement<F: Form>(amb: &Ambient<'_, F>, s: &SubnormalSeries, t: &SubnormalSeries) -> Result<Vec<usize>> {
    let mut raw = Vec::with_capacity(s.len() * t.len() + 1);
    for step in s.steps() {
        for &y in &t.terms[..t.len()] {
            raw.push(amb.project(y, step)?);
        }
    }
    raw.push(*s.terms.last().expect("non-empty series"));
    Ok(raw)
}

/// Removes repeated terms, keeping the first of each run; returns the
/// deduplicated terms and, per raw step, the index of the deduplicated step
/// it became (`None` for a trivial step).
fn dedup(raw: &[usize]) -> (Vec<usize>, Vec<Option<usize>>) {
    let mut terms = vec![raw[0]];
    let mut index = Vec::with_capacity(raw.len() - 1);
    for w in raw.windows(2) {
        if w[1] == w[0] {
            index.push(None);
        } else {
            index.push(Some(terms.len() - 1));
            terms.push(w[1]);
        }
    }
    (terms, index)
}

/// Refines `s` by the projections of the terms of `t` into its steps and
/// vice versa. Every projection except the bottom must be conormal.
pub fn refine_pair<F: Form>(amb: &Ambient<'_, F>, s: &SubnormalSeries, t: &SubnormalSeries) -> Result<RefinementResult> {
    same_object(amb, s)?;
    same_object(amb, t)?;
    let (n, m) = (s.len(), t.len());
    let raw_left = raw_refinement(amb, s, t)?;
    let raw_right = raw_refinement(amb, t, s)?;
    let bottom = amb.fiber().bottom();
    for (raw, name) in [(&raw_left, "Y"), (&raw_right, "X")] {
        for &term in raw.iter() {
            if term != bottom && !amb.is_conormal(term)? {
                return Err(Error::Proviso(format!(
                    "projection {} among the {name} terms is not conormal",
                    amb.describe(term)
                )));
            }
        }
    }
    let (left_terms, left_index) = dedup(&raw_left);
    let (right_terms, right_index) = dedup(&raw_right);
    let left = validate_series(amb, &left_terms)
        .map_err(|e| Error::integrity(format!("refined series does not validate: {e}")))?;
    let right = validate_series(amb, &right_terms)
        .map_err(|e| Error::integrity(format!("refined series does not validate: {e}")))?;
    let mut matching = Vec::new();
    for i in 0..n {
        for j in 0..m {
            match (left_index[i * m + j], right_index[j * n + i]) {
                (Some(a), Some(b)) => {
                    let (x, y) = (left.step(a), right.step(b));
                    if !amb.projects_onto(x, y)? || !amb.projects_onto(y, x)? {
                        return Err(Error::integrity(format!(
                            "matched steps {} and {} do not project onto each other",
                            amb.describe_interval(x),
                            amb.describe_interval(y)
                        )));
                    }
                    matching.push((a, b));
                }
                (None, None) => {}
                _ => {
                    return Err(Error::integrity(format!(
                        "step ({i}, {j}) is trivial on one side of the refinement only"
                    )))
                }
            }
        }
    }
    matching.sort_unstable();
    Ok(RefinementResult { left, right, raw_left, raw_right, matching })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectiveIsomorphism {
    /// `(step of s, step of t)`, sorted by the first index.
    pub pairs: Vec<(usize, usize)>,
}

/// Matches each step of `s` with the unique step of `t` that it projects
/// onto and that projects back onto it.
pub fn projectively_isomorphic<F: Form>(
    amb: &Ambient<'_, F>,
    s: &SubnormalSeries,
    t: &SubnormalSeries,
) -> Result<Option<ProjectiveIsomorphism>> {
    same_object(amb, s)?;
    same_object(amb, t)?;
    if s.len() != t.len() {
        return Ok(None);
    }
    let mut used = vec![false; t.len()];
    let mut pairs = Vec::with_capacity(s.len());
    for (i, x) in s.steps().enumerate() {
        let mut found = None;
        for (j, y) in t.steps().enumerate() {
            if amb.projects_onto(x, y)? && amb.projects_onto(y, x)? {
                if found.is_some() {
                    return Ok(None);
                }
                found = Some(j);
            }
        }
        match found {
            Some(j) if !used[j] => {
                used[j] = true;
                pairs.push((i, j));
            }
            _ => return Ok(None),
        }
    }
    Ok(Some(ProjectiveIsomorphism { pairs }))
}

/// Catalogue name of each quotient `X_i / X_{i+1}`, step by step.
pub fn quotient_types<F: Form>(amb: &Ambient<'_, F>, s: &SubnormalSeries) -> Result<Vec<String>> {
    same_object(amb, s)?;
    let form = amb.form();
    if form.group_of(amb.object()).is_none() {
        return Err(Error::Unsupported("quotient types need a group instance".into()));
    }
    s.steps()
        .map(|step| {
            let z = canonical_zigzag(form, amb.object(), step)?;
            let q = form
                .group_of(z.end())
                .ok_or_else(|| Error::Unsupported("quotient types need a group instance".into()))?;
            identify(&q).ok_or_else(|| {
                Error::Unsupported(format!("quotient of order {} is outside the catalogue", q.order()))
            })
        })
        .collect()
}

/// The quotient types as a sorted multiset.
pub fn quotient_type_multiset<F: Form>(amb: &Ambient<'_, F>, s: &SubnormalSeries) -> Result<Vec<String>> {
    let mut types = quotient_types(amb, s)?;
    types.sort();
    Ok(types)
}

/// Outcome of testing the containment claim on one candidate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct E1Check {
    pub candidate: Interval,
    pub s_step: usize,
    pub t_step: usize,
    /// A subfactor inside the `t` step that projects onto the candidate.
    pub witness: Interval,
    /// The projection of the `t` step into the `s` step.
    pub projection: Interval,
    /// Whether the candidate lies inside `projection`, as the claim asserts.
    pub contained: bool,
}

/// Tests the containment claim for `candidate ⊆ [X_{i+1}, X_i]`: if some subfactor inside
/// `[Y_{j+1}, Y_j]` projects onto the candidate, then the candidate should be
/// contained in `[Y_{j+1}, Y_j][X_{i+1}, X_i]`.
pub fn e1_check<F: Form>(
    amb: &Ambient<'_, F>,
    s: &SubnormalSeries,
    t: &SubnormalSeries,
    candidate: Interval,
    i: usize,
    j: usize,
) -> Result<E1Check> {
    same_object(amb, s)?;
    same_object(amb, t)?;
    if i >= s.len() || j >= t.len() {
        return Err(Error::domain(format!("step ({i}, {j}) out of range")));
    }
    let (xs, yt) = (s.step(i), t.step(j));
    if !amb.is_subfactor(candidate)? {
        return Err(Error::domain(format!("{} is not a subfactor", amb.describe_interval(candidate))));
    }
    if !amb.interval_contains(xs, candidate) {
        return Err(Error::domain(format!(
            "{} is not inside {}",
            amb.describe_interval(candidate),
            amb.describe_interval(xs)
        )));
    }
    let witness = find_onto_witness(amb, yt, candidate)?.ok_or_else(|| {
        Error::domain(format!(
            "no subfactor inside {} projects onto {}",
            amb.describe_interval(yt),
            amb.describe_interval(candidate)
        ))
    })?;
    let projection = amb.project_interval(yt, xs)?;
    Ok(E1Check {
        candidate,
        s_step: i,
        t_step: j,
        witness,
        projection,
        contained: amb.interval_contains(projection, candidate),
    })
}

/// A subfactor inside `within` projecting onto `target`; `within` itself is
/// tried first.
fn find_onto_witness<F: Form>(amb: &Ambient<'_, F>, within: Interval, target: Interval) -> Result<Option<Interval>> {
    if amb.is_subfactor(within)? && amb.projects_onto(within, target)? {
        return Ok(Some(within));
    }
    for w in amb.subfactors()? {
        if amb.interval_contains(within, w) && amb.projects_onto(w, target)? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Runs [`e1_check`] on every admissible candidate and pair of steps.
pub fn e1_scan<F: Form>(amb: &Ambient<'_, F>, s: &SubnormalSeries, t: &SubnormalSeries) -> Result<Vec<E1Check>> {
    let subfactors = amb.subfactors()?;
    let mut out = Vec::new();
    for i in 0..s.len() {
        for j in 0..t.len() {
            for &c in &subfactors {
                if !amb.interval_contains(s.step(i), c) || find_onto_witness(amb, t.step(j), c)?.is_none() {
                    continue;
                }
                out.push(e1_check(amb, s, t, c, i, j)?);
            }
        }
    }
    Ok(out)
}

/// Every subnormal series of the ambient object, in lexicographic order of
/// term lists.
pub fn all_series<F: Form>(amb: &Ambient<'_, F>) -> Result<Vec<SubnormalSeries>> {
    fn walk<F: Form>(amb: &Ambient<'_, F>, path: &mut Vec<usize>, out: &mut Vec<SubnormalSeries>) -> Result<()> {
        let fiber = amb.fiber();
        let current = *path.last().expect("path starts at the top");
        if current == fiber.bottom() {
            out.push(SubnormalSeries { object: amb.object(), terms: path.clone() });
            return Ok(());
        }
        for next in fiber.elements() {
            if fiber.lt(next, current) && amb.relative_normal(next, current)? {
                path.push(next);
                walk(amb, path, out)?;
                path.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    walk(amb, &mut vec![amb.fiber().top()], &mut out)?;
    out.sort_by(|a, b| a.terms.cmp(&b.terms));
    Ok(out)
}

/// A series none of whose steps `[A, B]` admits `A ⊲ Z ⊲ B` with `A < Z < B`.
pub fn is_composition_series<F: Form>(amb: &Ambient<'_, F>, s: &SubnormalSeries) -> Result<bool> {
    let fiber = amb.fiber();
    for step in s.steps() {
        for z in fiber.elements() {
            if fiber.lt(step.lo, z)
                && fiber.lt(z, step.hi)
                && amb.relative_normal(step.lo, z)?
                && amb.relative_normal(z, step.hi)?
            {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoarsestReport {
    pub refinement: RefinementResult,
    /// Number of projectively isomorphic pairs refining `(s, t)`.
    pub pairs_considered: usize,
    pub is_coarsest: bool,
    /// A projectively isomorphic refining pair that does not refine the
    /// constructed one.
    pub witness: Option<(SubnormalSeries, SubnormalSeries)>,
}

/// Tests minimality: whether every projectively isomorphic pair of refinements of
/// `s` and `t` refines the pair built by [`refine_pair`].
pub fn coarsest_check<F: Form>(amb: &Ambient<'_, F>, s: &SubnormalSeries, t: &SubnormalSeries) -> Result<CoarsestReport> {
    if amb.fiber().size() > MAX_COARSEST_FIBER {
        return Err(Error::Budget(format!(
            "fiber has {} subobjects; exhaustive chain search is limited to {MAX_COARSEST_FIBER}",
            amb.fiber().size()
        )));
    }
    let refinement = refine_pair(amb, s, t)?;
    let series = all_series(amb)?;
    let left: Vec<&SubnormalSeries> = series.iter().filter(|a| a.refines(s)).collect();
    let right: Vec<&SubnormalSeries> = series.iter().filter(|b| b.refines(t)).collect();
    let mut pairs_considered = 0;
    let mut witness = None;
    for a in &left {
        for b in &right {
            if projectively_isomorphic(amb, a, b)?.is_none() {
                continue;
            }
            pairs_considered += 1;
            if witness.is_none() && !(a.refines(&refinement.left) && b.refines(&refinement.right)) {
                witness = Some(((*a).clone(), (*b).clone()));
            }
        }
    }
    Ok(CoarsestReport { refinement, pairs_considered, is_coarsest: witness.is_none(), witness })
}
