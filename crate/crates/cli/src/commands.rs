use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use omlab_core::context::ContextGraph;
use omlab_core::dasein::DaseinMap;
use omlab_core::lattice::spec::LatticeSpec;
use omlab_core::lattice::{AxiomStatus, ElemId, LatticeKind, OmlLattice};
use omlab_core::presheaf::SubobjectEntry;
use omlab_core::theorem::{LabOptions, LemmaCase, TheoremLab};
use serde_json::json;

use crate::config::{Format, RunConfig};
use crate::{Failure, Output};

const EXIT_VIOLATION: u8 = 2;

fn file_stem(name: &str) -> String {
    name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' }).collect()
}

fn ext(f: Format) -> &'static str {
    match f {
        Format::Text => "txt",
        Format::Data => "json",
        Format::Dot => "dot",
    }
}

fn named(c: &RunConfig, lattice: &str, cmd: &str, body: String) -> Output {
    Output::one(format!("{}-{cmd}.{}", file_stem(lattice), ext(c.format)), body)
}

fn pretty<T: serde::Serialize + ?Sized>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn no_dot(cmd: &str) -> Failure {
    Failure::usage(format!("`{cmd}` has no dot output; use --format text or --format data"))
}

fn lookup(l: &OmlLattice, name: &str) -> Result<ElemId, Failure> {
    l.lookup(name).map_err(Failure::input)
}

fn lab<'g>(c: &RunConfig, g: &'g ContextGraph, z: Option<ElemId>) -> Result<TheoremLab<'g>, Failure> {
    let opts = LabOptions { oracle_bound: c.oracle_bound, z, ..LabOptions::default() };
    TheoremLab::new(g, opts).map_err(Failure::input)
}

pub fn validate(c: &RunConfig) -> Result<Output, Failure> {
    let (name, report) = c.audit()?;
    let valid = report.all_pass();
    let classification = if valid { c.lattice().ok().map(|l| (l.len(), l.classify())) } else { None };
    let body = match c.format {
        Format::Text => {
            let mut out = format!("lattice {name}\n");
            for (axiom, status) in &report.checks {
                match status {
                    AxiomStatus::Pass => writeln!(out, "  pass  {axiom}"),
                    AxiomStatus::Fail(w) => writeln!(out, "  FAIL  {axiom}: {w}"),
                    AxiomStatus::Skipped => writeln!(out, "  skip  {axiom}"),
                }
                .unwrap();
            }
            if let Some((n, cl)) = classification {
                let kind = match cl.kind {
                    LatticeKind::Boolean => "Boolean",
                    LatticeKind::Irreducible => "irreducible",
                    LatticeKind::Neither => "reducible, not Boolean",
                };
                writeln!(out, "{n} elements, {kind}, {}", if cl.atomic { "atomic" } else { "not atomic" }).unwrap();
            }
            writeln!(out, "{}", if valid { "valid" } else { "invalid" }).unwrap();
            out
        }
        Format::Data => pretty(&json!({
            "lattice": name,
            "valid": valid,
            "checks": report.checks,
            "elements": classification.map(|(n, _)| n),
            "classification": classification.map(|(_, cl)| cl),
        })),
        Format::Dot => return Err(no_dot("validate")),
    };
    Ok(named(c, &name, "validate", body).with_code(if valid { 0 } else { 1 }))
}

pub fn contexts(c: &RunConfig) -> Result<Output, Failure> {
    let g = c.graph()?;
    let l = g.lattice();
    let edges = g.hasse_edges();
    let body = match c.format {
        Format::Text => {
            let mut out = format!("lattice {}: {} contexts, {} inclusion edges\n", l.name(), g.len(), edges.len());
            for b in g.ids() {
                let ctx = g.context(b);
                let atoms: Vec<&str> = ctx.atoms().iter().map(|&a| l.name_of(a)).collect();
                writeln!(out, "  {}  size {}  atoms {}", g.label(b), ctx.len(), atoms.join(", ")).unwrap();
            }
            for (sub, sup) in &edges {
                writeln!(out, "  B{sub} < B{sup}").unwrap();
            }
            out
        }
        Format::Data => pretty(&g.export()),
        Format::Dot => g.to_dot(),
    };
    Ok(named(c, l.name(), "contexts", body))
}

pub fn daseinise(c: &RunConfig, element: &str) -> Result<Output, Failure> {
    let g = c.graph()?;
    let l = g.lattice();
    let x = lookup(l, element)?;
    let d = DaseinMap::new(&g);
    let s = d.daseinise(x);
    let body = match c.format {
        Format::Text => {
            let mut out = format!("δ({element}) = {}\n", g.describe(s));
            for b in g.ids() {
                let v = d.dasein_to(x, b);
                writeln!(out, "  {}  δ({element})_B = {}  α = {{{}}}", g.label(b), l.name_of(v), g.mask_names(b, s.at(b)).join(", ")).unwrap();
            }
            out
        }
        Format::Data => {
            let rows: Vec<_> = g
                .ids()
                .map(|b| json!({ "context": b, "value": l.name_of(d.dasein_to(x, b)), "atoms": g.mask_names(b, s.at(b)) }))
                .collect();
            pretty(&json!({ "lattice": l.name(), "element": element, "rows": rows, "subobject": g.export_subobject(s) }))
        }
        Format::Dot => g.dot_overlay(s).map_err(Failure::input)?,
    };
    Ok(named(c, l.name(), "daseinise", body))
}

pub fn epsilon(c: &RunConfig, file: Option<&Path>) -> Result<Output, Failure> {
    let g = c.graph()?;
    let l = g.lattice();
    let d = DaseinMap::new(&g);
    let Some(path) = file else {
        let lab = lab(c, &g, None)?;
        let report = d.adjoint_report(lab.universe()).map_err(Failure::input)?;
        let scope = if lab.is_exhaustive() { "all subobjects" } else { "generated frontier" };
        let body = match c.format {
            Format::Text => {
                let mut out = format!("ε over {} subobjects ({scope}), {} outside the image of δ\n", report.rows.len(), report.phantoms());
                for r in &report.rows {
                    writeln!(out, "  {}  ε = {}  {}", r.subobject, r.epsilon, if r.in_image { "image" } else { "phantom" }).unwrap();
                }
                out
            }
            Format::Data => pretty(&json!({ "lattice": l.name(), "exhaustive": lab.is_exhaustive(), "rows": report.rows })),
            Format::Dot => return Err(no_dot("epsilon")),
        };
        return Ok(named(c, l.name(), "epsilon", body));
    };
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let entries: Vec<SubobjectEntry> =
        serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let s = g.import_subobject(&entries).map_err(Failure::input)?;
    let u = d.epsilon(&s).map_err(Failure::input)?;
    let in_image = *d.daseinise(u) == s;
    let body = match c.format {
        Format::Text => format!(
            "S = {}\nε(S) = {}\nin image of δ: {}\n",
            g.describe(&s),
            l.name_of(u),
            if in_image { "yes" } else { "no" }
        ),
        Format::Data => pretty(&json!({ "subobject": entries, "epsilon": l.name_of(u), "in_image": in_image })),
        Format::Dot => g.dot_overlay(&s).map_err(Failure::input)?,
    };
    Ok(named(c, l.name(), "epsilon", body))
}

pub fn check_theorem(c: &RunConfig, z: Option<&str>) -> Result<Output, Failure> {
    let g = c.graph()?;
    let l = g.lattice();
    let z = z.map(|n| lookup(l, n)).transpose()?;
    let lab = lab(c, &g, z)?;
    let report = lab.equivalence_report().map_err(Failure::input)?;
    let body = match c.format {
        Format::Text => report.render_text(&g, c.audit_conegation),
        Format::Data => pretty(&report.to_export(&g)),
        Format::Dot => return Err(no_dot("check-theorem")),
    };
    let code = if report.consistent() { 0 } else { EXIT_VIOLATION };
    Ok(named(c, l.name(), "check-theorem", body).with_code(code))
}

pub fn lemma(c: &RunConfig, z: Option<&str>, y: Option<&str>) -> Result<Output, Failure> {
    let g = c.graph()?;
    let l = g.lattice();
    let lab = lab(c, &g, None)?;
    let pairs = match (z, y) {
        (Some(z), Some(y)) => vec![(lookup(l, z)?, lookup(l, y)?)],
        (None, None) => lab.lemma_pairs(),
        _ => return Err(Failure::usage("give both z and y, or neither")),
    };
    let mut witnesses = Vec::new();
    for (z, y) in pairs {
        witnesses.push((z, y, lab.lemma_witness(z, y).map_err(Failure::input)?));
    }
    let all_valid = witnesses.iter().all(|(_, _, w)| w.valid());
    let ok = |b: bool| if b { "ok" } else { "FAIL" };
    let body = match c.format {
        Format::Text => {
            let mut out = format!("lemma witnesses on {}: {} pairs\n", l.name(), witnesses.len());
            for (z, y, w) in &witnesses {
                let case = match w.case {
                    LemmaCase::A { u, v } => format!("a ({} < {})", l.name_of(u), l.name_of(v)),
                    LemmaCase::B => "b".into(),
                };
                write!(
                    out,
                    "  z = {}, y = {}: case {case}, x = {}, B0 = {}  ¬ {}  ~ {}",
                    l.name_of(*z),
                    l.name_of(*y),
                    l.name_of(w.x),
                    g.label(w.b0),
                    ok(w.negation_ok()),
                    ok(w.conegation_ok())
                )
                .unwrap();
                if c.audit_conegation {
                    write!(out, "  componentwise ~ {}", ok(w.pointwise_empty_at_b0 && w.pointwise_nonbottom)).unwrap();
                }
                out.push('\n');
            }
            writeln!(out, "{}", if all_valid { "all witnesses valid" } else { "some witnesses invalid" }).unwrap();
            out
        }
        Format::Data => {
            let rows: Vec<_> = witnesses.iter().map(|(z, y, w)| w.to_export(&g, *z, *y)).collect();
            pretty(&json!({ "lattice": l.name(), "all_valid": all_valid, "witnesses": rows }))
        }
        Format::Dot => return Err(no_dot("lemma")),
    };
    Ok(named(c, l.name(), "lemma", body).with_code(if all_valid { 0 } else { EXIT_VIOLATION }))
}

pub fn breakfast(c: &RunConfig, e: &str, b: &str, s: &str) -> Result<Output, Failure> {
    let g = c.graph()?;
    let l = g.lattice();
    let (e, b, s) = (lookup(l, e)?, lookup(l, b)?, lookup(l, s)?);
    let lab = lab(c, &g, None)?;
    let r = lab.breakfast(e, b, s).map_err(Failure::input)?;
    let body = match c.format {
        Format::Text => {
            let side = |entries: &[SubobjectEntry]| {
                entries.iter().map(|en| format!("B{}:{{{}}}", en.context, en.atoms.join(", "))).collect::<Vec<_>>().join(", ")
            };
            format!(
                "lattice:    {e} ∧ ({b} ∨ {s}) = {}, ({e} ∧ {b}) ∨ ({e} ∧ {s}) = {}: {}\n\
                 subobjects: δ{e} ∧ (δ{b} ∨ δ{s}) = {}\n\
                 \x20           (δ{e} ∧ δ{b}) ∨ (δ{e} ∧ δ{s}) = {}: {}\n",
                r.lattice_lhs,
                r.lattice_rhs,
                if r.lattice_distributes { "equal" } else { "differ" },
                side(&r.subobject_lhs),
                side(&r.subobject_rhs),
                if r.subobjects_equal { "equal" } else { "differ" },
                e = r.e,
                b = r.b,
                s = r.s,
            )
        }
        Format::Data => pretty(&r),
        Format::Dot => return Err(no_dot("breakfast")),
    };
    Ok(named(c, l.name(), "breakfast", body).with_code(if r.subobjects_equal { 0 } else { EXIT_VIOLATION }))
}

pub fn battery(c: &RunConfig) -> Result<Output, Failure> {
    let g = c.graph()?;
    let lab = lab(c, &g, None)?;
    let report = lab.battery();
    let body = match c.format {
        Format::Text => report.render_text(),
        Format::Data => pretty(&report),
        Format::Dot => return Err(no_dot("battery")),
    };
    let code = if report.all_pass() { 0 } else { EXIT_VIOLATION };
    Ok(named(c, g.lattice().name(), "battery", body).with_code(code))
}

pub fn export(c: &RunConfig) -> Result<Output, Failure> {
    let g = c.graph()?;
    let l = g.lattice();
    let spec = LatticeSpec::from_lattice(l);
    let stem = file_stem(l.name());
    if c.out.is_some() {
        return Ok(Output {
            files: vec![
                (format!("{stem}.lattice"), spec.to_text()),
                (format!("{stem}.json"), spec.to_json()),
                (format!("{stem}-contexts.dot"), g.to_dot()),
                (format!("{stem}-contexts.json"), pretty(&g.export())),
            ],
            code: 0,
        });
    }
    let body = match c.format {
        Format::Text => spec.to_text(),
        Format::Data => pretty(&json!({ "lattice": spec, "contexts": g.export() })),
        Format::Dot => g.to_dot(),
    };
    Ok(named(c, l.name(), "export", body))
}
