use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

use noether::group::{builtin, GroupForm};
use noether::modular::random::random_modular_lattice;
use noether::modular::ModularLatticeForm;
use noether::series::{all_series, projectively_isomorphic, refine_pair};
use noether::zigzag::{canonical_zigzag, chase, ChaseDirection};
use noether::{dualize, Ambient, Form, Interval, ObjectId, SubobjectRef};

const GROUPS: &[&str] = &["Z4", "V4", "Z6", "S3", "D8", "Q8", "Z2xZ4", "Z12", "D12", "Z2xZ6"];

fn form(name: &str) -> GroupForm {
    GroupForm::new([builtin(name).unwrap()]).unwrap()
}

fn interval(amb: &Ambient<'_, GroupForm>, a: usize, b: usize) -> Interval {
    let f = amb.fiber();
    let (a, b) = (a % f.size(), b % f.size());
    Interval::new(f.meet(a, b), f.join(a, b))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projection_lands_in_the_interval_and_is_monotone(
        g in prop::sample::select(GROUPS), z1 in 0usize..64, z2 in 0usize..64, a in 0usize..64, b in 0usize..64,
    ) {
        let f = form(g);
        let amb = Ambient::new(&f, ObjectId(0)).unwrap();
        let n = amb.fiber().size();
        let x = interval(&amb, a, b);
        let (z1, z2) = (z1 % n, z2 % n);
        let p1 = amb.project(z1, x).unwrap();
        prop_assert!(amb.fiber().leq(x.lo, p1) && amb.fiber().leq(p1, x.hi));
        let lower = amb.fiber().meet(z1, z2);
        prop_assert!(amb.fiber().leq(amb.project(lower, x).unwrap(), p1));
        // projecting twice changes nothing
        prop_assert_eq!(amb.project(p1, x).unwrap(), p1);
    }

    #[test]
    fn reversed_zigzag_chases_backwards(
        g in prop::sample::select(GROUPS), a in 0usize..64, b in 0usize..64, c in 0usize..64, d in 0usize..64, s in 0usize..64,
    ) {
        let f = form(g);
        let amb = Ambient::new(&f, ObjectId(0)).unwrap();
        let sf: Vec<Interval> = amb.subfactors().unwrap();
        let (x, y) = (sf[(a * 64 + b) % sf.len()], sf[(c * 64 + d) % sf.len()]);
        let z = amb.subfactor_zigzag(x, y).unwrap();
        let start = f.fiber(z.start()).unwrap();
        let end = f.fiber(z.end()).unwrap();
        let u = SubobjectRef::new(z.start(), s % start.size());
        let v = SubobjectRef::new(z.end(), s % end.size());
        let r = z.reversed();
        prop_assert_eq!(
            chase(&f, &z, u, ChaseDirection::Forward).unwrap(),
            chase(&f, &r, u, ChaseDirection::Backward).unwrap()
        );
        prop_assert_eq!(
            chase(&f, &z, v, ChaseDirection::Backward).unwrap(),
            chase(&f, &r, v, ChaseDirection::Forward).unwrap()
        );
    }

    #[test]
    fn canonical_zigzag_reaches_the_quotient(g in prop::sample::select(GROUPS), a in 0usize..64) {
        let f = form(g);
        let amb = Ambient::new(&f, ObjectId(0)).unwrap();
        let sf = amb.subfactors().unwrap();
        let x = sf[a % sf.len()];
        let z = canonical_zigzag(&f, ObjectId(0), x).unwrap();
        let q = f.group(z.end()).unwrap().order();
        let (lo, hi) = (f.subgroup(amb.subobject(x.lo)).unwrap().count(), f.subgroup(amb.subobject(x.hi)).unwrap().count());
        prop_assert_eq!(q * lo, hi);
    }

    #[test]
    fn projective_isomorphism_is_symmetric(g in prop::sample::select(GROUPS), a in 0usize..1024, b in 0usize..1024) {
        let f = form(g);
        let amb = Ambient::new(&f, ObjectId(0)).unwrap();
        let series = all_series(&amb).unwrap();
        let (s, t) = (&series[a % series.len()], &series[b % series.len()]);
        let st = projectively_isomorphic(&amb, s, t).unwrap();
        let ts = projectively_isomorphic(&amb, t, s).unwrap();
        prop_assert_eq!(st.is_some(), ts.is_some());
        if let (Some(st), Some(ts)) = (st, ts) {
            let mut flipped: Vec<(usize, usize)> = ts.pairs.iter().map(|&(j, i)| (i, j)).collect();
            flipped.sort_unstable();
            prop_assert_eq!(st.pairs, flipped);
        }
    }

    #[test]
    fn refinement_is_symmetric_and_refines(g in prop::sample::select(GROUPS), a in 0usize..1024, b in 0usize..1024) {
        let f = form(g);
        let amb = Ambient::new(&f, ObjectId(0)).unwrap();
        let series = all_series(&amb).unwrap();
        let (s, t) = (&series[a % series.len()], &series[b % series.len()]);
        let st = refine_pair(&amb, s, t).unwrap();
        let ts = refine_pair(&amb, t, s).unwrap();
        prop_assert!(st.left.refines(s) && st.right.refines(t));
        prop_assert_eq!(st.left.len(), st.right.len());
        prop_assert_eq!(&st.left, &ts.right);
        prop_assert_eq!(&st.right, &ts.left);
        prop_assert_eq!(st.raw_left.len(), s.len() * t.len() + 1);
        prop_assert!(projectively_isomorphic(&amb, &st.left, &st.right).unwrap().is_some());
    }

    #[test]
    fn modular_images_form_a_galois_connection(seed in any::<u64>(), a in 0usize..64, b in 0usize..64) {
        let lattice = random_modular_lattice(&mut StdRng::seed_from_u64(seed), 12).unwrap();
        let form = ModularLatticeForm::new([lattice]).unwrap();
        let o = ObjectId(0);
        let fiber = form.fiber(o).unwrap();
        let x = a % fiber.size();
        for m in [form.embedding(SubobjectRef::new(o, x)).unwrap(), form.projection(SubobjectRef::new(o, x)).unwrap()] {
            let m = m.unwrap();
            let (dom, cod) = (form.fiber(form.domain(&m)).unwrap(), form.fiber(form.codomain(&m)).unwrap());
            let u = b % dom.size();
            for v in cod.elements() {
                prop_assert_eq!(
                    cod.leq(form.direct_image(&m, u).unwrap(), v),
                    dom.leq(u, form.inverse_image(&m, v).unwrap())
                );
            }
        }
    }

    #[test]
    fn dual_of_dual_fibers_agree(g in prop::sample::select(GROUPS), a in 0usize..64, b in 0usize..64) {
        let f = form(g);
        let inner = dualize(&f);
        let dd = dualize(&inner);
        let (fib, dfib) = (f.fiber(ObjectId(0)).unwrap(), dd.fiber(ObjectId(0)).unwrap());
        let (a, b) = (a % fib.size(), b % fib.size());
        prop_assert_eq!(fib.meet(a, b), dfib.meet(a, b));
        prop_assert_eq!(fib.join(a, b), dfib.join(a, b));
        prop_assert_eq!(inner.fiber(ObjectId(0)).unwrap().meet(a, b), fib.join(a, b));
    }
}
