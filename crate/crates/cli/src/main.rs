mod input;

// Writes to stdout, ignoring a closed pipe (`noether ... | head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

macro_rules! outp {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($arg)*);
    }};
}

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use noether::dot::hasse_dot;
use noether::group::{GroupForm, GroupMorphism, DEFAULT_MAX_ORDER};
use noether::modular::{FiniteLattice, ModularLatticeForm};
use noether::series::{coarsest_check, e1_check, projectively_isomorphic, quotient_types, refine_pair, SubnormalSeries};
use noether::verify::{verify_all, ConformanceReport, DEFAULT_BUDGET};
use noether::zigzag::{chase, ChaseDirection, Zigzag};
use noether::{dualize, Ambient, Error, Form, Interval, ObjectId, SubobjectRef};

#[derive(Parser)]
#[command(name = "noether", version, about = "Isomorphism theorems for finite noetherian forms")]
struct Cli {
    /// Largest group order accepted from files and built-ins.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// The subgroup lattice of a group.
    Subgroups {
        /// Group file or built-in name such as `builtin:Z6` or `D8`.
        group: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Run the axiom and theorem suites on groups and modular lattices.
    Verify {
        groups: Vec<String>,
        /// Modular lattice files; each becomes its own instance.
        #[arg(long = "lattice")]
        lattices: Vec<String>,
        /// Also verify the dual of the group instance.
        #[arg(long)]
        dual: bool,
        /// Tuple budget per suite.
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Projections of two subfactors onto each other and the induced isomorphism.
    Butterfly {
        group: String,
        /// `[[lower elements], [upper elements]]`.
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Refine two subnormal series of the same group.
    Refine {
        /// Series file or inline `{"group": .., "terms": [[..], ..]}`.
        s: String,
        t: String,
    },
    /// Match the steps of two series by mutual projection.
    Projiso { s: String, t: String },
    /// Chase a subgroup along a zigzag.
    Chase {
        group: String,
        /// Leg list, inline or a file.
        #[arg(long)]
        zigzag: String,
        /// Elements of the subgroup to chase.
        #[arg(long)]
        subgroup: String,
        /// Chase from the last node back to the first.
        #[arg(long)]
        backward: bool,
    },
    /// Reproduce the failure of the coarsest-refinement claims in Z6.
    Counterexample {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Checks that ran to completion but did not hold.
struct CheckFailed;

enum Failure {
    Check,
    Error(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<CheckFailed> for Failure {
    fn from(_: CheckFailed) -> Self {
        Failure::Check
    }
}

type Outcome = std::result::Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Error(e)) => {
            eprintln!("noether: {e}");
            match e {
                Error::Proviso(_) | Error::Integrity(_) | Error::Budget(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(cli: Cli) -> Outcome {
    let form = GroupForm::with_max_order(cli.max_order);
    match cli.command {
        Command::Subgroups { group, format } => subgroups(&form, &group, format),
        Command::Verify { groups, lattices, dual, budget } => verify(&form, &groups, &lattices, dual, budget),
        Command::Butterfly { group, x, y } => butterfly(&form, &group, &x, &y),
        Command::Refine { s, t } => refine(&form, &s, &t),
        Command::Projiso { s, t } => projiso(&form, &s, &t),
        Command::Chase { group, zigzag, subgroup, backward } => chase_cmd(&form, &group, &zigzag, &subgroup, backward),
        Command::Counterexample { format } => counterexample(format),
    }
}

fn print_json<T: Serialize>(value: &T) {
    out!("{}", serde_json::to_string_pretty(value).expect("serializable output"));
}

fn elements(form: &GroupForm, x: SubobjectRef) -> Result<Vec<usize>, Error> {
    Ok(form.subgroup(x)?.to_vec())
}

fn interval_json(form: &GroupForm, object: ObjectId, x: Interval) -> Result<Value, Error> {
    Ok(json!([elements(form, SubobjectRef::new(object, x.lo))?, elements(form, SubobjectRef::new(object, x.hi))?]))
}

fn series_json(form: &GroupForm, s: &SubnormalSeries) -> Result<Value, Error> {
    let terms = s.terms.iter().map(|&t| elements(form, SubobjectRef::new(s.object, t))).collect::<Result<Vec<_>, _>>()?;
    Ok(json!(terms))
}

fn same_group(s: &SubnormalSeries, t: &SubnormalSeries) -> Result<(), Error> {
    if s.object != t.object {
        return Err(Error::Validation("the two series must be in the same group".into()));
    }
    Ok(())
}

fn subgroups(form: &GroupForm, group: &str, format: Format) -> Outcome {
    let o = input::register(form, group)?;
    let fiber = form.fiber(o)?;
    match format {
        Format::Dot => outp!("{}", hasse_dot(form, o)?),
        Format::Json => {
            let subs = fiber
                .elements()
                .map(|x| {
                    let r = SubobjectRef::new(o, x);
                    Ok(json!({ "id": x, "elements": elements(form, r)?, "normal": form.is_normal(r)? }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            print_json(&json!({
                "group": form.object_name(o)?,
                "order": form.group(o)?.order(),
                "subgroups": subs,
                "covers": fiber.covers(),
            }));
        }
        Format::Text => {
            out!("{}: {} subgroups", form.object_name(o)?, fiber.size());
            for x in fiber.elements() {
                let r = SubobjectRef::new(o, x);
                let mark = if form.is_normal(r)? { " normal" } else { "" };
                out!("  {x}: {}{mark}", form.describe_subobject(r)?);
            }
        }
    }
    Ok(())
}

fn verify(form: &GroupForm, groups: &[String], lattices: &[String], dual: bool, budget: u64) -> Outcome {
    if groups.is_empty() && lattices.is_empty() {
        return Err(Error::Validation("nothing to verify: give groups or --lattice files".into()).into());
    }
    let mut reports: Vec<ConformanceReport> = Vec::new();
    if !groups.is_empty() {
        for g in groups {
            input::register(form, g)?;
        }
        reports.extend(verify_all(form, &[], budget)?);
        if dual {
            reports.extend(verify_all(&dualize(form), &[], budget)?);
        }
    }
    for path in lattices {
        let lattice = FiniteLattice::load(path)?;
        let lform = ModularLatticeForm::new([lattice])?;
        reports.extend(verify_all(&lform, &[], budget)?);
    }
    print_json(&reports);
    if reports.iter().all(|r| r.passed() && !r.partial) {
        Ok(())
    } else {
        Err(CheckFailed.into())
    }
}

fn butterfly(form: &GroupForm, group: &str, x: &str, y: &str) -> Outcome {
    let o = input::register(form, group)?;
    let (x, y) = (input::interval(form, o, x)?, input::interval(form, o, y)?);
    let amb = Ambient::new(form, o)?;
    for (name, i) in [("x", x), ("y", y)] {
        if !amb.is_subfactor(i)? {
            return Err(Error::Validation(format!("--{name} {} is not a subfactor", amb.describe_interval(i))).into());
        }
    }
    let report = amb.butterfly(x, y)?;
    let iv = |i| interval_json(form, o, i);
    print_json(&json!({
        "group": form.object_name(o)?,
        "x": iv(x)?,
        "y": iv(y)?,
        "yx": iv(report.yx)?,
        "xy": iv(report.xy)?,
        "mutual": [report.mutual.0, report.mutual.1],
        "conormal": [report.conormal.0, report.conormal.1],
        "subfactors": [report.subfactors.0, report.subfactors.1],
        "induces_iso": report.induces_iso,
        "iso_witness": report.iso_witness.as_ref().map(morphism_json).transpose()?,
        "holds": report.holds(),
    }));
    if report.holds() {
        Ok(())
    } else {
        Err(CheckFailed.into())
    }
}

fn morphism_json(m: &GroupMorphism) -> Result<Value, Error> {
    Ok(json!({ "domain": m.domain().0, "codomain": m.codomain().0, "map": m.map() }))
}

fn refine(form: &GroupForm, s: &str, t: &str) -> Outcome {
    let (s, t) = (input::series(form, s)?, input::series(form, t)?);
    same_group(&s, &t)?;
    let amb = Ambient::new(form, s.object)?;
    let r = refine_pair(&amb, &s, &t)?;
    let raw = |terms: &[usize]| {
        terms.iter().map(|&x| elements(form, SubobjectRef::new(s.object, x))).collect::<Result<Vec<_>, _>>()
    };
    print_json(&json!({
        "group": form.object_name(s.object)?,
        "left": series_json(form, &r.left)?,
        "right": series_json(form, &r.right)?,
        "raw_left": raw(&r.raw_left)?,
        "raw_right": raw(&r.raw_right)?,
        "matching": r.matching,
    }));
    Ok(())
}

fn projiso(form: &GroupForm, s: &str, t: &str) -> Outcome {
    let (s, t) = (input::series(form, s)?, input::series(form, t)?);
    same_group(&s, &t)?;
    let amb = Ambient::new(form, s.object)?;
    let matching = projectively_isomorphic(&amb, &s, &t)?;
    let pairs = match &matching {
        Some(m) => m
            .pairs
            .iter()
            .map(|&(i, j)| {
                Ok(json!({
                    "s_step": i,
                    "t_step": j,
                    "s": interval_json(form, s.object, s.step(i))?,
                    "t": interval_json(form, s.object, t.step(j))?,
                }))
            })
            .collect::<Result<Vec<_>, Error>>()
            .map(Some)?,
        None => None,
    };
    print_json(&json!({
        "group": form.object_name(s.object)?,
        "projectively_isomorphic": matching.is_some(),
        "matching": pairs,
        "s_quotients": quotient_types(&amb, &s)?,
        "t_quotients": quotient_types(&amb, &t)?,
    }));
    if matching.is_some() {
        Ok(())
    } else {
        Err(CheckFailed.into())
    }
}

fn chase_cmd(form: &GroupForm, group: &str, zigzag: &str, subgroup: &str, backward: bool) -> Outcome {
    let start = input::register(form, group)?;
    let legs = input::legs(form, group, zigzag)?;
    let z = Zigzag::new(form, start, legs)?;
    let elems: Vec<usize> = input::json_arg(subgroup, "subgroup")?;
    let (from, dir) = if backward { (z.end(), ChaseDirection::Backward) } else { (start, ChaseDirection::Forward) };
    let x = form.subobject(from, &elems)?;
    let result = chase(form, &z, x, dir)?;
    let nodes = z.nodes().iter().map(|&n| form.object_name(n)).collect::<Result<Vec<_>, _>>()?;
    print_json(&json!({
        "nodes": nodes,
        "direction": if backward { "backward" } else { "forward" },
        "from": elements(form, x)?,
        "object": form.object_name(result.object)?,
        "result": elements(form, result)?,
    }));
    Ok(())
}

fn counterexample(format: Format) -> Outcome {
    let form = GroupForm::with_max_order(DEFAULT_MAX_ORDER);
    let o = input::register(&form, "builtin:Z6")?;
    let amb = Ambient::new(&form, o)?;
    let id = |e: &[usize]| input::subgroup(&form, o, e);
    let z6 = id(&[0, 1, 2, 3, 4, 5])?;
    let (y1, c, bottom) = (id(&[0, 2, 4])?, id(&[0, 3])?, id(&[0])?);
    let s = noether::series::validate_series(&amb, &[z6, bottom])?;
    let t = noether::series::validate_series(&amb, &[z6, y1, bottom])?;
    let step = t.step(1);
    let p_upper = amb.project_interval(step, Interval::new(c, z6))?;
    let p_whole = amb.project_interval(step, s.step(0))?;
    let e1 = e1_check(&amb, &s, &t, Interval::new(c, z6), 0, 1)?;
    let report = coarsest_check(&amb, &s, &t)?;

    let reproduced = p_upper == Interval::new(c, z6)
        && p_whole == Interval::new(bottom, y1)
        && !e1.contained
        && !report.is_coarsest
        && report.witness.is_some();

    let iv = |i| interval_json(&form, o, i);
    match format {
        Format::Dot => outp!("{}", hasse_dot(&form, o)?),
        Format::Json => {
            let witness = match &report.witness {
                Some((a, b)) => Some(json!([series_json(&form, a)?, series_json(&form, b)?])),
                None => None,
            };
            print_json(&json!({
                "group": "Z6",
                "subgroups": form.fiber(o)?.elements().map(|x| elements(&form, SubobjectRef::new(o, x))).collect::<Result<Vec<_>, _>>()?,
                "covers": form.fiber(o)?.covers(),
                "s": series_json(&form, &s)?,
                "t": series_json(&form, &t)?,
                "projection_onto_upper": iv(p_upper)?,
                "projection_onto_whole": iv(p_whole)?,
                "containment": {
                    "candidate": iv(e1.candidate)?,
                    "witness": iv(e1.witness)?,
                    "projection": iv(e1.projection)?,
                    "contained": e1.contained,
                },
                "refinement": [series_json(&form, &report.refinement.left)?, series_json(&form, &report.refinement.right)?],
                "is_coarsest": report.is_coarsest,
                "coarser_witness": witness,
                "reproduced": reproduced,
            }));
        }
        Format::Text => {
            let d = |x| amb.describe(x);
            let di = |i| amb.describe_interval(i);
            out!("Subgroup lattice of Z6 (a diamond):");
            out!("            {}", d(z6));
            out!("           /    \\");
            out!("      {}    {}", d(y1), d(c));
            out!("           \\    /");
            out!("            {}", d(bottom));
            out!();
            out!("S: {}", s.terms.iter().map(|&x| d(x)).collect::<Vec<_>>().join(" > "));
            out!("T: {}", t.terms.iter().map(|&x| d(x)).collect::<Vec<_>>().join(" > "));
            out!();
            out!("{} projected into {} is {}", di(step), di(Interval::new(c, z6)), di(p_upper));
            out!("{} projected into {} is {}", di(step), di(s.step(0)), di(p_whole));
            out!();
            out!("containment claim fails:");
            out!("  candidate {} lies in the S step {}", di(e1.candidate), di(s.step(0)));
            out!("  {} projects onto it", di(e1.witness));
            out!("  but the candidate is not inside {}", di(e1.projection));
            out!();
            out!(
                "constructed refinement: {} and {}",
                report.refinement.left.terms.iter().map(|&x| d(x)).collect::<Vec<_>>().join(" > "),
                report.refinement.right.terms.iter().map(|&x| d(x)).collect::<Vec<_>>().join(" > ")
            );
            if let Some((a, b)) = &report.witness {
                out!("coarsest claim fails: projectively isomorphic refinements that do not refine it:");
                out!("  {}", a.terms.iter().map(|&x| d(x)).collect::<Vec<_>>().join(" > "));
                out!("  {}", b.terms.iter().map(|&x| d(x)).collect::<Vec<_>>().join(" > "));
            }
            out!();
            out!("{}", if reproduced { "refutation reproduced" } else { "refutation NOT reproduced" });
        }
    }
    if reproduced {
        Ok(())
    } else {
        Err(CheckFailed.into())
    }
}
