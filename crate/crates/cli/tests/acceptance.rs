//! Acceptance run: one line per criterion, non-zero exit if any fails.
//! Reference values come from the element-level code in `oracle`.

mod oracle;

use std::collections::{HashMap, HashSet};
use std::process::{Command, ExitCode};
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use noether::group::{builtin, builtin_names, klein_four, GroupForm, GroupMorphism};
use noether::modular::random::random_modular_lattice;
use noether::modular::{FiniteLattice, ModularLatticeForm};
use noether::series::{
    all_series, coarsest_check, e1_check, is_composition_series, projectively_isomorphic, quotient_type_multiset,
    refine_pair, validate_series, SubnormalSeries,
};
use noether::verify::{verify_axioms, verify_theorems, ConformanceReport, DEFAULT_BUDGET};
use noether::zigzag::{induces_hom, Leg, LegDirection, Zigzag};
use noether::{dualize, Ambient, Form, Interval, ObjectId, SubobjectRef};

use oracle::{is_bijection, isomorphic, members, to_set, Set, Table};

type Outcome = Result<String, String>;
type Step = (Set, Set);
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn lib<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Built-in groups up to `max_order`, one per distinct table.
fn corpus(max_order: usize) -> Vec<noether::group::FiniteGroup> {
    let mut seen = HashSet::new();
    builtin_names(max_order)
        .into_iter()
        .map(|n| builtin(&n).expect("built-in"))
        .filter(|g| seen.insert(g.rows()))
        .collect()
}

fn mask(form: &GroupForm, o: ObjectId, id: usize) -> Set {
    to_set(&form.subgroup(SubobjectRef::new(o, id)).expect("subgroup").to_vec())
}

fn imask(form: &GroupForm, o: ObjectId, x: Interval) -> (Set, Set) {
    (mask(form, o, x.lo), mask(form, o, x.hi))
}

fn suites<F: Form>(form: &F) -> Result<Vec<ConformanceReport>, String> {
    Ok(vec![lib(verify_axioms(form, &[], DEFAULT_BUDGET))?, lib(verify_theorems(form, &[], DEFAULT_BUDGET))?])
}

fn all_pass(reports: &[ConformanceReport]) -> Result<usize, String> {
    let mut checks = 0;
    for r in reports {
        ensure!(!r.partial, "{} on {} ran out of budget", r.suite, r.instance);
        if let Some(f) = r.failures().next() {
            return Err(format!("{} on {}: '{}' failed: {:?}", r.suite, r.instance, f.name, f.witness));
        }
        checks += r.checks.len();
    }
    Ok(checks)
}

fn criterion_1_groups() -> Result<GroupForm, String> {
    let names = ["Z6", "Z4", "S3", "D8", "Q8", "Z12"];
    let mut groups: Vec<_> = names.iter().map(|n| builtin(n).expect("built-in")).collect();
    groups.insert(2, klein_four().expect("klein four"));
    lib(GroupForm::new(groups))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let form = criterion_1_groups()?;
    let checks = all_pass(&suites(&form)?)?;
    let secs = start.elapsed().as_secs_f64();
    ensure!(start.elapsed().as_secs() < 60, "took {secs:.1}s");
    Ok(format!("{checks} checks, zero failures, {secs:.1}s"))
}

fn criterion_2() -> Outcome {
    let form = criterion_1_groups()?;
    let checks = all_pass(&suites(&dualize(&form))?)?;

    let inner = dualize(&form);
    let dd = dualize(&inner);
    let mut pool: Vec<GroupMorphism> = Vec::new();
    for o in form.objects() {
        pool.push(lib(form.identity(o))?);
        for x in lib(form.fiber(o))?.elements() {
            let r = SubobjectRef::new(o, x);
            pool.extend(lib(form.embedding(r))?);
            pool.extend(lib(form.projection(r))?);
        }
    }
    let objects = form.objects();
    let mut rng = StdRng::seed_from_u64(2024);
    let mut matches = 0;
    const QUERIES: usize = 1000;
    for q in 0..QUERIES {
        let o = objects[rng.gen_range(0..objects.len())];
        let fiber = lib(form.fiber(o))?;
        let a = rng.gen_range(0..fiber.size());
        let b = rng.gen_range(0..fiber.size());
        let f = &pool[rng.gen_range(0..pool.len())];
        let g = &pool[rng.gen_range(0..pool.len())];
        let r = SubobjectRef::new(o, a);
        let same = match q % 10 {
            0 => lib(dd.fiber(o))?.leq(a, b) == fiber.leq(a, b),
            1 => lib(dd.fiber(o))?.meet(a, b) == fiber.meet(a, b),
            2 => lib(dd.fiber(o))?.join(a, b) == fiber.join(a, b),
            3 => {
                let x = rng.gen_range(0..lib(form.fiber(form.domain(f)))?.size());
                lib(dd.direct_image(f, x))? == lib(form.direct_image(f, x))?
            }
            4 => {
                let y = rng.gen_range(0..lib(form.fiber(form.codomain(f)))?.size());
                lib(dd.inverse_image(f, y))? == lib(form.inverse_image(f, y))?
            }
            5 => lib(dd.is_normal(r))? == lib(form.is_normal(r))? && lib(dd.is_conormal(r))? == lib(form.is_conormal(r))?,
            6 => lib(dd.embedding(r))? == lib(form.embedding(r))?,
            7 => lib(dd.projection(r))? == lib(form.projection(r))?,
            8 => dd.domain(f) == form.domain(f) && dd.codomain(f) == form.codomain(f),
            _ => {
                if form.domain(f) == form.codomain(g) {
                    lib(dd.compose(f, g))? == lib(form.compose(f, g))?
                } else {
                    lib(dd.identity(o))? == lib(form.identity(o))?
                }
            }
        };
        matches += usize::from(same);
    }
    ensure!(matches == QUERIES, "double dual agreed on {matches}/{QUERIES} queries");
    Ok(format!("dual: {checks} checks pass; double dual agreed on {matches}/{QUERIES} queries"))
}

/// Per-group context for the subfactor criteria.
struct Instance {
    form: GroupForm,
    o: ObjectId,
    table: Table,
    subfactors: Vec<Interval>,
}

fn instances(max_order: usize) -> Result<Vec<Instance>, String> {
    corpus(max_order)
        .into_iter()
        .map(|g| {
            let table = Table::of(&g);
            let form = lib(GroupForm::new([g]))?;
            let o = ObjectId(0);
            let amb = lib(Ambient::new(&form, o))?;
            let subfactors = lib(amb.subfactors())?;
            // the library's subgroups and subfactors against the oracle's
            let mut lib_subs: Vec<Set> = lib(form.fiber(o))?.elements().map(|x| mask(&form, o, x)).collect();
            lib_subs.sort_unstable();
            ensure!(lib_subs == table.subgroups(), "{}: subgroup lattice differs", form.label());
            let mut ours: Vec<(Set, Set)> = Vec::new();
            for &lo in &lib_subs {
                for &hi in &lib_subs {
                    if table.normal_in(lo, hi) {
                        ours.push((lo, hi));
                    }
                }
            }
            let mut theirs: Vec<(Set, Set)> = subfactors.iter().map(|&x| imask(&form, o, x)).collect();
            ours.sort_unstable();
            theirs.sort_unstable();
            ensure!(ours == theirs, "{}: subfactors differ", form.label());
            Ok(Instance { form, o, table, subfactors })
        })
        .collect()
}

fn criterion_3(corpus: &[Instance]) -> Outcome {
    let (mut pairs, mut loose) = (0, 0);
    for inst in corpus {
        let amb = lib(Ambient::new(&inst.form, inst.o))?;
        let t = &inst.table;
        for &x in &inst.subfactors {
            for y in amb.intervals() {
                let check = lib(amb.subfactor_projection_check(x, y))?;
                let (xm, ym) = (imask(&inst.form, inst.o, x), imask(&inst.form, inst.o, y));
                let yx = t.project_interval(ym, xm);
                let xy = t.project_interval(xm, ym);
                let yx_y = t.project_interval(yx, ym);
                ensure!(imask(&inst.form, inst.o, check.yx) == yx, "{}: YX differs for {x} {y}", inst.form.label());
                ensure!(imask(&inst.form, inst.o, check.xy) == xy, "{}: XY differs for {x} {y}", inst.form.label());
                ensure!(yx_y == xy, "{}: (YX)Y != XY for X={x} Y={y}", inst.form.label());
                ensure!(check.identity_holds && check.holds(), "{}: library disagrees for {x} {y}", inst.form.label());
                // every subgroup is conormal, so YX is a subfactor whenever Y is
                let (y_sf, yx_sf) = (t.normal_in(ym.0, ym.1), t.normal_in(yx.0, yx.1));
                ensure!(check.y_subfactor == y_sf && check.yx_subfactor == yx_sf, "{}: subfactor flags differ", inst.form.label());
                ensure!(!y_sf || yx_sf, "{}: YX not a subfactor for X={x} Y={y}", inst.form.label());
                loose += usize::from(!yx_sf);
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{pairs} (subfactor, interval) pairs in {} groups; {loose} with Y and YX not subfactors",
        corpus.len()
    ))
}

fn preimage(m: &GroupMorphism, g: usize) -> Option<usize> {
    m.map().iter().position(|&v| v == g)
}

fn criterion_4(corpus: &[Instance]) -> Outcome {
    let mut pairs = 0;
    for inst in corpus {
        let (form, o, t) = (&inst.form, inst.o, &inst.table);
        let amb = lib(Ambient::new(form, o))?;
        for &x in &inst.subfactors {
            for &y in &inst.subfactors {
                let ctx = format!("{} X={} Y={}", form.label(), amb.describe_interval(x), amb.describe_interval(y));
                let rep = lib(amb.butterfly(x, y))?;
                let (xm, ym) = (imask(form, o, x), imask(form, o, y));
                let (yx, xy) = (t.project_interval(ym, xm), t.project_interval(xm, ym));
                ensure!(imask(form, o, rep.yx) == yx && imask(form, o, rep.xy) == xy, "{ctx}: projections differ");
                let mutual = (t.project_interval(yx, xy) == xy, t.project_interval(xy, yx) == yx);
                ensure!(mutual == (true, true) && rep.mutual == mutual, "{ctx}: mutual projection {mutual:?} / {:?}", rep.mutual);
                ensure!(t.normal_in(yx.0, yx.1) && t.normal_in(xy.0, xy.1), "{ctx}: projections are not subfactors");
                ensure!(rep.subfactors == (true, true), "{ctx}: library misses subfactors");

                let (qa, qb) = (t.quotient(yx.0, yx.1), t.quotient(xy.0, xy.1));
                let brute = isomorphic(&qa, &qb);
                ensure!(brute == rep.induces_iso, "{ctx}: brute force says {brute}, library {}", rep.induces_iso);
                ensure!(brute, "{ctx}: quotients not isomorphic");

                let w = rep.iso_witness.as_ref().ok_or(format!("{ctx}: no witness"))?;
                let z = rep.iso_zigzag.as_ref().ok_or(format!("{ctx}: no zigzag"))?;
                let legs = z.legs();
                ensure!(legs.len() == 4, "{ctx}: zigzag has {} legs", legs.len());
                let (pi_a, iota_a, iota_b, pi_b) = (&legs[0].morphism, &legs[1].morphism, &legs[2].morphism, &legs[3].morphism);
                let (dom, cod) = (lib(form.group(w.domain()))?, lib(form.group(w.codomain()))?);
                let (dt, ct) = (Table::of(&dom), Table::of(&cod));
                ensure!(w.domain() == pi_a.codomain() && w.codomain() == pi_b.codomain(), "{ctx}: witness endpoints");
                ensure!(is_bijection(&w.map(), ct.order()) && dt.is_hom_to(&ct, &w.map()), "{ctx}: witness is not a bijective homomorphism");
                // the witness carries the class of g in YX to the class of g in XY
                for g in members(yx.1 & xy.1) {
                    let a = preimage(iota_a, g).ok_or(format!("{ctx}: {g} not in YX+"))?;
                    let b = preimage(iota_b, g).ok_or(format!("{ctx}: {g} not in XY+"))?;
                    ensure!(w.apply(pi_a.apply(a)) == pi_b.apply(b), "{ctx}: witness disagrees at {g}");
                }
                pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} subfactor pairs, brute-force isomorphism agreed on all"))
}

/// Cosets of `x` related to cosets of `y` when they meet, as a bijection.
fn coset_bijection(t: &Table, x: (Set, Set), y: (Set, Set)) -> bool {
    let (cx, cy) = (t.cosets(x.0, x.1), t.cosets(y.0, y.1));
    cx.iter().all(|&a| cy.iter().filter(|&&b| a & b != 0).count() == 1)
        && cy.iter().all(|&b| cx.iter().filter(|&&a| a & b != 0).count() == 1)
}

fn criterion_5(corpus: &[Instance]) -> Outcome {
    let (mut pairs, mut isos) = (0, 0);
    for inst in corpus {
        let (form, o, t) = (&inst.form, inst.o, &inst.table);
        let amb = lib(Ambient::new(form, o))?;
        for &x in &inst.subfactors {
            for &y in &inst.subfactors {
                let c = lib(amb.theorem_a_equivalence(x, y))?;
                let (xm, ym) = (imask(form, o, x), imask(form, o, y));
                let side = t.project_interval(xm, ym) == ym && t.project_interval(ym, xm) == xm;
                let relation = coset_bijection(t, xm, ym);
                ensure!(
                    c.induces_iso == side && relation == side && c.holds(),
                    "{}: X={x} Y={y}: library {}, projections {side}, coset relation {relation}",
                    form.label(),
                    c.induces_iso
                );
                pairs += 1;
                isos += usize::from(side);
            }
        }
    }
    Ok(format!("{pairs} pairs ({isos} isomorphic), zero discrepancies"))
}

/// Relational composite of a zigzag over element indices: row `a` is the set
/// of end elements related to start element `a`.
fn relation(form: &GroupForm, z: &Zigzag<GroupMorphism>) -> Result<Vec<Set>, String> {
    let n = lib(form.group(z.start()))?.order();
    let mut rel: Vec<Set> = (0..n).map(|a| 1 << a).collect();
    for (leg, &next) in z.legs().iter().zip(&z.nodes()[1..]) {
        let size = lib(form.group(next))?.order();
        let map = leg.morphism.map();
        rel = rel
            .into_iter()
            .map(|r| match leg.direction {
                LegDirection::Rightward => members(r).fold(0, |acc, a| acc | 1 << map[a]),
                LegDirection::Leftward => (0..size).filter(|&b| r >> map[b] & 1 == 1).fold(0, |acc, b| acc | 1 << b),
            })
            .collect();
    }
    Ok(rel)
}

fn criterion_6() -> Outcome {
    let form = lib(GroupForm::new(corpus(8)))?;
    // close the family of embeddings and projections under their endpoints
    let mut morphisms: Vec<GroupMorphism> = Vec::new();
    let mut done = HashSet::new();
    let mut todo: Vec<ObjectId> = form.objects();
    while let Some(o) = todo.pop() {
        if !done.insert(o) {
            continue;
        }
        for x in lib(form.fiber(o))?.elements() {
            let r = SubobjectRef::new(o, x);
            for m in lib(form.embedding(r))?.into_iter().chain(lib(form.projection(r))?) {
                todo.push(m.domain());
                todo.push(m.codomain());
                if !morphisms.contains(&m) {
                    morphisms.push(m);
                }
            }
        }
    }
    let mut out: HashMap<ObjectId, Vec<Leg<GroupMorphism>>> = HashMap::new();
    for m in &morphisms {
        out.entry(m.domain()).or_default().push(Leg::right(m.clone()));
        out.entry(m.codomain()).or_default().push(Leg::left(m.clone()));
    }
    let (mut total, mut functional) = (0usize, 0usize);
    let mut stack: Vec<Zigzag<GroupMorphism>> = done.iter().map(|&o| Zigzag::empty(o)).collect();
    while let Some(z) = stack.pop() {
        let rel = relation(&form, &z)?;
        let oracle = rel.iter().all(|r| r.count_ones() == 1);
        let verdict = lib(induces_hom(&form, &z))?;
        ensure!(
            verdict.is_some() == oracle,
            "zigzag through {:?}: criterion says {}, relational composite functional {oracle}",
            z.nodes(),
            verdict.is_some()
        );
        if let Some(h) = verdict.and_then(|h| h.witness) {
            ensure!(h.map().iter().enumerate().all(|(a, &b)| rel[a] == 1 << b), "witness differs from the composite");
        }
        total += 1;
        functional += usize::from(oracle);
        if z.len() < 4 {
            for leg in &out[&z.end()] {
                let mut next = z.clone();
                lib(next.push(&form, leg.clone()))?;
                stack.push(next);
            }
        }
    }
    Ok(format!("{total} zigzags over {} objects ({functional} functional), 100% agreement", done.len()))
}

fn criterion_7() -> Outcome {
    let form = lib(GroupForm::new([builtin("Z6").expect("Z6")]))?;
    let o = ObjectId(0);
    let amb = lib(Ambient::new(&form, o))?;
    let id = |e: &[usize]| form.subobject(o, e).map(|r| r.id).map_err(|e| e.to_string());
    let (z6, y1, c, e) = (id(&[0, 1, 2, 3, 4, 5])?, id(&[0, 2, 4])?, id(&[0, 3])?, id(&[0])?);
    let s = lib(validate_series(&amb, &[z6, e]))?;
    let t = lib(validate_series(&amb, &[z6, y1, e]))?;
    let step = Interval::new(e, y1);
    ensure!(lib(amb.project_interval(step, Interval::new(c, z6)))? == Interval::new(c, z6), "first projection");
    ensure!(lib(amb.project_interval(step, Interval::new(e, z6)))? == Interval::new(e, y1), "second projection");
    // the same two projections by hand
    let table = Table::of(&builtin("Z6").expect("Z6"));
    let m = |x| mask(&form, o, x);
    ensure!(table.project_interval((m(e), m(y1)), (m(c), m(z6))) == (m(c), m(z6)), "oracle: first projection");
    ensure!(table.project_interval((m(e), m(y1)), (m(e), m(z6))) == (m(e), m(y1)), "oracle: second projection");
    let e1 = lib(e1_check(&amb, &s, &t, Interval::new(c, z6), 0, 1))?;
    ensure!(!e1.contained, "containment claim held");
    let report = lib(coarsest_check(&amb, &s, &t))?;
    ensure!(!report.is_coarsest, "reported coarsest");
    let expected = (lib(validate_series(&amb, &[z6, c, e]))?, lib(validate_series(&amb, &[z6, y1, e]))?);
    ensure!(report.witness.as_ref() == Some(&expected), "witness pair {:?}", report.witness);
    let status = Command::new(env!("CARGO_BIN_EXE_noether")).arg("counterexample").output().map_err(|e| e.to_string())?;
    ensure!(status.status.success(), "`noether counterexample` exited with {:?}", status.status.code());
    Ok("projections, containment failure, coarser witness pair and CLI exit status reproduced".into())
}

/// Series validity checked element by element.
fn valid_series(t: &Table, terms: &[Set]) -> bool {
    terms.first() == Some(&t.whole())
        && terms.last() == Some(&1)
        && terms.windows(2).all(|w| w[1] != w[0] && t.normal_in(w[1], w[0]))
}

fn criterion_8(corpus: &[Instance]) -> Outcome {
    let (mut pairs, mut jh_pairs) = (0, 0);
    let mut iso_cache: HashMap<(Step, Step), bool> = HashMap::new();
    for inst in corpus {
        let (form, o, t) = (&inst.form, inst.o, &inst.table);
        let amb = lib(Ambient::new(form, o))?;
        let series = lib(all_series(&amb))?;
        let masks = |s: &SubnormalSeries| s.terms.iter().map(|&x| mask(form, o, x)).collect::<Vec<_>>();
        let mut quotient_iso = |a: (Set, Set), b: (Set, Set)| {
            *iso_cache.entry((a, b)).or_insert_with(|| isomorphic(&t.quotient(a.0, a.1), &t.quotient(b.0, b.1)))
        };
        for s in &series {
            ensure!(valid_series(t, &masks(s)), "{}: enumerated series invalid", form.label());
            for u in &series {
                let r = lib(refine_pair(&amb, s, u))?;
                let (l, rr) = (masks(&r.left), masks(&r.right));
                ensure!(valid_series(t, &l) && valid_series(t, &rr), "{}: refinement invalid", form.label());
                ensure!(r.left.len() == r.right.len(), "{}: refinement lengths differ", form.label());
                ensure!(r.left.refines(s) && r.right.refines(u), "{}: not refinements", form.label());
                let m = lib(projectively_isomorphic(&amb, &r.left, &r.right))?
                    .ok_or(format!("{}: no projective isomorphism", form.label()))?;
                for &(i, j) in &m.pairs {
                    let (a, b) = ((l[i + 1], l[i]), (rr[j + 1], rr[j]));
                    ensure!(quotient_iso(a, b), "{}: matched quotients differ", form.label());
                }
                ensure!(
                    lib(quotient_type_multiset(&amb, &r.left))? == lib(quotient_type_multiset(&amb, &r.right))?,
                    "{}: quotient multisets differ",
                    form.label()
                );
                pairs += 1;
            }
        }
        // composition series: no term can be inserted between neighbours
        let subs = t.subgroups();
        let mut composition = Vec::new();
        for s in &series {
            let ms = masks(s);
            let maximal = ms.windows(2).all(|w| {
                !subs.iter().any(|&k| k != w[0] && k != w[1] && k & w[1] == w[1] && k & !w[0] == 0 && t.normal_in(w[1], k) && t.normal_in(k, w[0]))
            });
            ensure!(maximal == lib(is_composition_series(&amb, s))?, "{}: composition test differs", form.label());
            if maximal {
                composition.push(ms);
            }
        }
        for a in &composition {
            for b in &composition {
                let mut unused: Vec<(Set, Set)> = b.windows(2).map(|w| (w[1], w[0])).collect();
                for w in a.windows(2) {
                    let q = (w[1], w[0]);
                    let k = unused.iter().position(|&p| quotient_iso(q, p)).ok_or(format!("{}: Jordan-Hölder fails", form.label()))?;
                    unused.swap_remove(k);
                }
                ensure!(unused.is_empty(), "{}: composition lengths differ", form.label());
                jh_pairs += 1;
            }
        }
    }
    Ok(format!("{pairs} series pairs refined and matched; {jh_pairs} composition-series pairs agree"))
}

fn n5() -> Result<(), String> {
    // 0 < a=1 < c=3 < 4, 0 < b=2 < 4
    let below = [[0, 1], [0, 2], [0, 3], [0, 4], [1, 3], [1, 4], [2, 4], [3, 4]];
    let mut leq = vec![false; 25];
    for i in 0..5 {
        leq[i * 5 + i] = true;
    }
    for [a, b] in below {
        leq[a * 5 + b] = true;
    }
    let err = FiniteLattice::from_order("N5", 5, leq.clone()).err().ok_or("N5 accepted")?.to_string();
    let num = |key: &str| -> Result<usize, String> {
        let at = err.find(key).ok_or(format!("no {key} in '{err}'"))? + key.len();
        err[at..].chars().take_while(char::is_ascii_digit).collect::<String>().parse().map_err(|e| format!("{e}"))
    };
    let (x, y, z) = (num("x=")?, num("y=")?, num("z=")?);
    let le = |a: usize, b: usize| leq[a * 5 + b];
    let join = |a, b| (0..5).filter(|&u| le(a, u) && le(b, u)).find(|&u| (0..5).all(|v| !(le(a, v) && le(b, v)) || le(u, v))).unwrap();
    let meet = |a, b| (0..5).filter(|&u| le(u, a) && le(u, b)).find(|&u| (0..5).all(|v| !(le(v, a) && le(v, b)) || le(v, u))).unwrap();
    ensure!(le(x, z) && meet(join(x, y), z) != join(x, meet(y, z)), "reported triple ({x},{y},{z}) is not a witness");
    Ok(())
}

fn criterion_9() -> Outcome {
    let groups = lib(GroupForm::new([builtin("Z6").expect("Z6")]))?;
    let fiber = lib(groups.fiber(ObjectId(0)))?;
    let describe = |x| groups.describe_subobject(SubobjectRef::new(ObjectId(0), x)).unwrap();
    let diamond = lib(FiniteLattice::from_fiber("Sub(Z6)", &fiber, describe))?;
    let mut lattices = vec![diamond];
    for seed in [1, 2, 3] {
        lattices.push(lib(random_modular_lattice(&mut StdRng::seed_from_u64(seed), 12))?);
    }
    let mut sizes = Vec::new();
    for l in lattices {
        sizes.push(l.size());
        ensure!(l.size() <= 12, "lattice too large");
        let form = lib(ModularLatticeForm::new([l]))?;
        all_pass(&suites(&form)?)?;
    }
    n5()?;
    Ok(format!("lattices of sizes {sizes:?} pass both suites; N5 rejected with a valid witness"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = match instances(12) {
        Ok(c) => c,
        Err(e) => {
            println!("corpus setup FAILED: {e}");
            return ExitCode::FAILURE;
        }
    };
    let criteria: Vec<Criterion<'_>> = vec![
        ("axiom conformance", Box::new(criterion_1)),
        ("duality", Box::new(criterion_2)),
        ("subfactor projection lemma", Box::new(|| criterion_3(&corpus))),
        ("butterfly", Box::new(|| criterion_4(&corpus))),
        ("projects-onto biconditional", Box::new(|| criterion_5(&corpus))),
        ("homomorphism induction oracle", Box::new(criterion_6)),
        ("Z6 counterexample", Box::new(criterion_7)),
        ("refinement theorem", Box::new(|| criterion_8(&corpus))),
        ("modular lattice instance", Box::new(criterion_9)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        match run() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{:.1}s]", i + 1, t.elapsed().as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({why}) [{:.1}s]", i + 1, t.elapsed().as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria pass in {:.1}s", criteria.len() - failed, criteria.len(), start.elapsed().as_secs_f64());
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
