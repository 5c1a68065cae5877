use std::fmt::Write;

use crate::domain_model::{
    Atom, AttributeRange, Cardinality, DataSetKind, DomainModel, Predicate, PredicateBody,
    Relation, Term,
};
use crate::formula::Formula;

fn flag(out: &mut Vec<String>, name: &str, on: bool) {
    if on {
        out.push(format!("is {name}: true"));
    }
}

fn relation_flags(r: &Relation) -> Vec<String> {
    let mut out = Vec::new();
    flag(&mut out, "variable", r.is_variable);
    flag(&mut out, "transitive", r.is_transitive);
    flag(&mut out, "symmetric", r.is_symmetric);
    flag(&mut out, "asymmetric", r.is_asymmetric);
    flag(&mut out, "reflexive", r.is_reflexive);
    flag(&mut out, "irreflexive", r.is_irreflexive);
    if r.domain_cardinality != Cardinality::ANY {
        out.push(format!("domain cardinality: {}", r.domain_cardinality));
    }
    if r.range_cardinality != Cardinality::ANY {
        out.push(format!("range cardinality: {}", r.range_cardinality));
    }
    out
}

fn term(t: &Term) -> String {
    match t {
        Term::Var(v) => format!("?{v}"),
        Term::Str(s) => format!("\"{s}\""),
        Term::Name(n) => n.clone(),
    }
}

fn atoms(atoms: &[Atom]) -> String {
    atoms
        .iter()
        .map(|a| {
            let args: Vec<String> = a.args.iter().map(term).collect();
            format!("{}({})", a.symbol, args.join(", "))
        })
        .collect::<Vec<_>>()
        .join(" & ")
}

fn predicate(p: &Predicate) -> String {
    match &p.body {
        PredicateBody::Plain(f) => format!("{}: {}", p.id, f.to_ascii()),
        PredicateBody::Horn(h) => format!("{}: {} <- {}", p.id, atoms(&h.head), atoms(&h.body)),
    }
}

fn ascii(f: &Formula) -> String {
    f.to_ascii()
}

/// Prints a model in the `.dmod` syntax; sections without entries are left out.
pub fn print_domain_model(m: &DomainModel) -> String {
    let mut sections: Vec<(&str, Vec<String>)> = Vec::new();
    sections.push((
        "concepts",
        m.concepts
            .iter()
            .map(|c| {
                let mut s = format!("concept {}", c.name);
                if let Some(p) = &c.parent {
                    let _ = write!(s, " parent concept {p}");
                }
                if c.is_variable {
                    s.push_str(" is variable: true");
                }
                s
            })
            .collect(),
    ));
    sections.push((
        "relations",
        m.relations
            .iter()
            .map(|r| {
                let mut s = format!("relation {} domain: {} range: {}", r.name, r.domain, r.range);
                let flags = relation_flags(r);
                if !flags.is_empty() {
                    let _ = write!(s, " {{ {} }}", flags.join("; "));
                }
                s
            })
            .collect(),
    ));
    sections.push((
        "attributes",
        m.attributes
            .iter()
            .map(|a| {
                let range = match &a.range {
                    AttributeRange::Expr(f) => ascii(f),
                    AttributeRange::Enumeration(items) => format!("{{{}}}", items.join(", ")),
                };
                format!(
                    "attribute {} domain: {} range: {range} {{ is variable: {} is functional: {} is total: {} }}",
                    a.name,
                    ascii(&a.domain),
                    a.is_variable,
                    a.is_functional,
                    a.is_total
                )
            })
            .collect(),
    ));
    sections.push((
        "data sets",
        m.data_sets
            .iter()
            .map(|d| match &d.kind {
                DataSetKind::Enumerated(items) => {
                    let elems: Vec<String> = items.iter().map(|i| format!("data value {i}")).collect();
                    format!("enumerated data set {} {{ elements: {} }}", d.name, elems.join(" "))
                }
                DataSetKind::Custom { defined_by: None } => format!("custom data set {}", d.name),
                DataSetKind::Custom {
                    defined_by: Some(p),
                } => format!("custom data set {} defined by {p}", d.name),
            })
            .collect(),
    ));
    sections.push((
        "data values",
        m.data_values
            .iter()
            .map(|v| format!("data value {} type: {}", v.name, v.value_of))
            .collect(),
    ));
    sections.push((
        "individuals",
        m.individuals
            .iter()
            .map(|i| format!("individual {} of {}", i.name, i.concept))
            .collect(),
    ));
    sections.push((
        "maplets",
        m.relation_maplets
            .iter()
            .chain(&m.attribute_maplets)
            .map(|mp| format!("maplet {}: {} |-> {}", mp.owner, mp.antecedent, ascii(&mp.image)))
            .collect(),
    ));
    sections.push(("predicates", m.predicates.iter().map(predicate).collect()));
    sections.push((
        "gluing invariants",
        m.gluing_invariants.iter().map(predicate).collect(),
    ));

    let mut out = format!("domain model {}", m.name);
    if let Some(p) = &m.parent {
        let _ = write!(out, " parent domain model {p}");
    }
    let body: Vec<&(&str, Vec<String>)> = sections.iter().filter(|(_, e)| !e.is_empty()).collect();
    if body.is_empty() {
        out.push_str(" { }\n");
        return out;
    }
    out.push_str(" {\n");
    for (header, entries) in body {
        let _ = writeln!(out, "  {header}:");
        for e in entries {
            let _ = writeln!(out, "    {e}");
        }
    }
    out.push_str("}\n");
    out
}
