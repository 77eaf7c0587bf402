//! Graphviz output of fibers as Hasse diagrams.

use std::fmt::Write;

use crate::error::Result;
use crate::form::{Form, ObjectId, SubobjectRef};

/// The cover relation of the fiber of `object`, bottom drawn lowest, nodes
/// labeled by the form's description of each subobject.
pub fn hasse_dot<F: Form>(form: &F, object: ObjectId) -> Result<String> {
    let fiber = form.fiber(object)?;
    let name = form.object_name(object)?;
    let mut out = String::new();
    writeln!(out, "digraph \"Sub({})\" {{", escape(&name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for x in fiber.elements() {
        let label = form.describe_subobject(SubobjectRef::new(object, x))?;
        writeln!(out, "  n{x} [label=\"{}\"];", escape(&label)).unwrap();
    }
    for (a, b) in fiber.covers() {
        writeln!(out, "  n{a} -> n{b} [arrowhead=none];").unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}
