use std::collections::BTreeSet;

use super::gen::Draw;
use kaos2b::backprop::{apply_delta, backprop, diff_component, extend_trace, RuleId};
use kaos2b::bsystem::{Classification, Component, LogicFormula, SetDecl, Substitution};
use kaos2b::domain_model::{
    order_chain, resolve_scope, AttributeRange, DataSetKind, DomainModel, SymbolTable,
};
use kaos2b::dsl::{parse_bsystem, parse_domain_model};
use kaos2b::emit::print_component;
use kaos2b::formula::{Arrow, BinOp, Formula, RenderMode};
use kaos2b::translate::{translate_project, CorrespondenceTrace, TraceKind, TranslateOptions};

#[derive(Debug, Clone)]
pub enum Edit {
    AbstractSet(String),
    DataSet(String),
    Enumerated(String, Vec<String>),
    Item { set: String, item: String },
    SubConcept { name: String, of: String },
    Individual { name: String, of: String },
    DataValue { name: String, of: String },
    Variable { concept: String },
    Attribute(Element),
    Relation(Element),
    Predicate { label: String, formula: Formula, invariant: bool },
}

#[derive(Debug, Clone)]
pub struct Element {
    pub name: String,
    pub variable: bool,
    pub arrow: Arrow,
    pub typed: bool,
    pub domain: String,
    pub range: String,
    pub maplets: Vec<(String, Formula)>,
}

impl Edit {
    pub fn rules(&self) -> Vec<RuleId> {
        match self {
            Edit::AbstractSet(_) => vec![RuleId::Rule101],
            Edit::DataSet(_) => vec![RuleId::Rule102],
            Edit::Enumerated(..) => vec![RuleId::Rule103],
            Edit::Item { .. } => vec![RuleId::Rule104],
            Edit::SubConcept { .. } => vec![RuleId::Rule105],
            Edit::Individual { .. } => vec![RuleId::Rule106],
            Edit::DataValue { .. } => vec![RuleId::Rule107],
            Edit::Variable { .. } => vec![RuleId::Rule108],
            Edit::Attribute(e) | Edit::Relation(e) => {
                let head = if matches!(self, Edit::Attribute(_)) {
                    RuleId::Attribute
                } else {
                    RuleId::Relation
                };
                let mut out = vec![head];
                out.extend(e.maplets.iter().map(|_| RuleId::Maplet));
                out
            }
            Edit::Predicate { .. } => vec![RuleId::Predicate],
        }
    }
}

pub fn lf(label: &str, f: Formula, class: Classification) -> LogicFormula {
    LogicFormula::text(label, f, class)
}

pub fn id(n: &str) -> Formula {
    Formula::ident(n)
}

pub fn maplet_set(pairs: &[(String, Formula)]) -> Formula {
    if pairs.is_empty() {
        return Formula::EmptySet;
    }
    Formula::SetLit(
        pairs
            .iter()
            .map(|(a, b)| Formula::binary(BinOp::Maplet, id(a), b.clone()))
            .collect(),
    )
}

pub fn roundtrip_parse(c: &Component) -> Component {
    let text = print_component(c, RenderMode::Ascii);
    parse_bsystem(&text).unwrap_or_else(|e| panic!("{e}\n{text}"))
}

/// Writes the edits into a copy of the generated component, the way a
/// user would in the `.bsys` file.
pub fn edit_component(base: &Component, edits: &[Edit], members: &dyn Fn(&str) -> Vec<String>) -> Component {
    let mut c = base.clone();
    for (k, e) in edits.iter().enumerate() {
        let label = format!("e{k}");
        let prop = |c: &mut Component, f: Formula| c.properties.push(lf(&label, f, Classification::Property));
        match e {
            Edit::AbstractSet(n) => c.sets.push(SetDecl::abstract_set(n)),
            Edit::DataSet(n) => c.sets.push(SetDecl::Abstract {
                name: n.clone(),
                annotation: Some("dataset".into()),
            }),
            Edit::Enumerated(n, items) => c.sets.push(SetDecl::Enumerated {
                name: n.clone(),
                items: items.clone(),
            }),
            Edit::Item { set, item } => {
                for s in &mut c.sets {
                    if let SetDecl::Enumerated { name, items } = s {
                        if name == set {
                            items.push(item.clone());
                        }
                    }
                }
            }
            Edit::SubConcept { name, of } => {
                c.constants.push(name.clone());
                prop(&mut c, Formula::binary(BinOp::Subset, id(name), id(of)));
            }
            Edit::Individual { name, of } | Edit::DataValue { name, of } => {
                c.constants.push(name.clone());
                prop(&mut c, Formula::binary(BinOp::In, id(name), id(of)));
            }
            Edit::Variable { concept } => {
                let x = format!("X_{concept}");
                c.variables.push(x.clone());
                c.invariants.push(lf(
                    &label,
                    Formula::binary(BinOp::Subset, id(&x), id(concept)),
                    Classification::Invariant,
                ));
                let inds: Vec<Formula> = members(concept).iter().map(|i| id(i)).collect();
                c.initialisation.push(Substitution {
                    label: label.clone(),
                    target: x,
                    value: if inds.is_empty() { Formula::EmptySet } else { Formula::SetLit(inds) },
                });
            }
            Edit::Attribute(el) | Edit::Relation(el) => {
                let ty = Formula::binary(BinOp::Arrow(el.arrow), id(&el.domain), id(&el.range));
                let (list, class) = if el.variable {
                    (&mut c.variables, Classification::Invariant)
                } else {
                    (&mut c.constants, Classification::Property)
                };
                list.push(el.name.clone());
                let typing = if el.typed {
                    let t = format!("T_{}", el.name);
                    c.constants.push(t.clone());
                    prop(&mut c, Formula::binary(BinOp::Eq, id(&t), ty));
                    Formula::binary(BinOp::In, id(&el.name), id(&t))
                } else {
                    Formula::binary(BinOp::In, id(&el.name), ty)
                };
                let typing = lf(&format!("{label}t"), typing, class);
                match class {
                    Classification::Property => c.properties.push(typing),
                    _ => c.invariants.push(typing),
                }
                if el.variable {
                    c.initialisation.push(Substitution {
                        label: format!("{label}m"),
                        target: el.name.clone(),
                        value: maplet_set(&el.maplets),
                    });
                } else if !el.maplets.is_empty() {
                    {
                        c.properties.push(lf(
                            &format!("{label}m"),
                            Formula::binary(BinOp::Eq, id(&el.name), maplet_set(&el.maplets)),
                            Classification::Property,
                        ));
                    }
                }
            }
            Edit::Predicate {
                label,
                formula,
                invariant,
            } => {
                if *invariant {
                    c.invariants.push(lf(label, formula.clone(), Classification::Invariant));
                } else {
                    c.properties.push(lf(label, formula.clone(), Classification::Property));
                }
            }
        }
    }
    c
}

/// Extent formulas `C = {..}` over concepts.
pub fn is_extent(f: &Formula, concepts: &BTreeSet<String>) -> bool {
    match f {
        Formula::Binary {
            op: BinOp::Eq,
            lhs,
            rhs,
        } => {
            lhs.as_ident().is_some_and(|c| concepts.contains(c))
                && match rhs.as_ref() {
                    Formula::SetLit(items) => items.iter().all(|i| i.as_ident().is_some()),
                    _ => false,
                }
        }
        _ => false,
    }
}

#[derive(Debug, PartialEq, Eq)]
pub struct Normal {
    pub sets: BTreeSet<String>,
    pub names: BTreeSet<String>,
    pub variables: BTreeSet<String>,
    pub properties: Vec<Formula>,
    pub invariants: Vec<Formula>,
    pub init: Vec<(String, Formula)>,
}

/// A component up to formula labels, declaration order and extents.
pub fn normal(c: &Component, concepts: &BTreeSet<String>, extent_vars: &BTreeSet<String>) -> Normal {
    let sorted = |fs: &[LogicFormula]| {
        let mut v: Vec<Formula> = fs
            .iter()
            .map(|f| f.formula.clone())
            .filter(|f| !is_extent(f, concepts))
            .collect();
        v.sort();
        v
    };
    let mut init: Vec<(String, Formula)> = c
        .initialisation
        .iter()
        .filter(|s| !extent_vars.contains(&s.target))
        .map(|s| (s.target.clone(), s.value.clone()))
        .collect();
    init.sort();
    Normal {
        sets: c
            .sets
            .iter()
            .map(|s| format!("{}{:?}", s.name(), s.items()))
            .collect(),
        names: c.declared_names().into_iter().map(str::to_string).collect(),
        variables: c.variables.iter().cloned().collect(),
        properties: sorted(&c.properties),
        invariants: sorted(&c.invariants),
        init,
    }
}

pub fn describe(want: &Normal, got: &Normal) -> String {
    let mut out = String::new();
    macro_rules! field {
        ($f:ident) => {
            if want.$f != got.$f {
                out.push_str(&format!("{}:\n  edited      {:?}\n  regenerated {:?}\n", stringify!($f), want.$f, got.$f));
            }
        };
    }
    field!(sets);
    field!(names);
    field!(variables);
    field!(properties);
    field!(invariants);
    field!(init);
    out
}

pub struct Case<'a> {
    pub chain: &'a [DomainModel],
    pub level: usize,
    pub comps: Vec<Component>,
    pub trace: CorrespondenceTrace,
}

impl<'a> Case<'a> {
    pub fn new(chain: &'a [DomainModel], level: usize) -> Self {
        let (comps, trace) = translate_project(chain, &TranslateOptions::default(), None).unwrap();
        Case {
            chain,
            level,
            comps,
            trace,
        }
    }

    pub fn scope(&self) -> SymbolTable {
        resolve_scope(&self.chain[self.level], &self.chain[..self.level]).unwrap()
    }

    pub fn model(&self) -> &DomainModel {
        &self.chain[self.level]
    }

    /// Runs one edit session and checks the re-translation against the
    /// edited component.
    pub fn run(&self, edits: &[Edit]) -> Result<(), String> {
        let model = self.model();
        let members = |concept: &str| -> Vec<String> {
            let mut out: Vec<String> = model
                .individuals
                .iter()
                .filter(|i| i.concept == concept)
                .map(|i| i.name.clone())
                .collect();
            for e in edits {
                if let Edit::Individual { name, of } = e {
                    if of == concept {
                        out.push(name.clone());
                    }
                }
            }
            out
        };
        let base = roundtrip_parse(&self.comps[self.level]);
        let edited = roundtrip_parse(&edit_component(&base, edits, &members));
        let additions = diff_component(&base, &edited).map_err(|e| format!("diff: {e}"))?;
        let delta = backprop(&additions, &self.trace, self.chain, &base.name).map_err(|e| format!("backprop: {e}"))?;

        let mut got: Vec<String> = delta.ops.iter().map(|(r, _)| r.to_string()).collect();
        let mut want: Vec<String> = edits.iter().flat_map(Edit::rules).map(|r| r.to_string()).collect();
        got.sort();
        want.sort();
        if got != want {
            return Err(format!("rules {got:?}, expected {want:?}"));
        }

        let mut chain = self.chain.to_vec();
        chain[self.level] = apply_delta(model, &delta);
        let hints = extend_trace(&self.trace, &delta).map_err(|e| e.to_string())?;
        let (comps, trace) =
            translate_project(&chain, &TranslateOptions::default(), Some(&hints)).map_err(|e| format!("translate: {e}"))?;

        for (i, (old, new)) in self.comps.iter().zip(&comps).enumerate() {
            if i != self.level && old != new {
                return Err(format!("component {} changed", old.name));
            }
        }
        let records: BTreeSet<_> = trace.records().collect();
        if let Some(r) = delta.trace.iter().find(|r| !records.contains(*r)) {
            return Err(format!("{} {} -> {} not kept", r.kind, r.domain, r.b));
        }

        let concepts: BTreeSet<String> = chain[..=self.level]
            .iter()
            .flat_map(|m| m.concepts.iter().map(|c| c.name.clone()))
            .collect();
        let m = &chain[self.level];
        let extent_vars: BTreeSet<String> = m
            .concepts
            .iter()
            .filter(|c| c.is_variable)
            .filter_map(|c| trace.get(TraceKind::ConceptVariable, &format!("{}.{}", m.name, c.name)))
            .map(|b| b.split_once('.').unwrap().1.to_string())
            .collect();
        let new = &comps[self.level];
        let (want, got) = (
            normal(&edited, &concepts, &extent_vars),
            normal(new, &concepts, &extent_vars),
        );
        if want != got {
            return Err(format!("re-translation differs\n{}", describe(&want, &got)));
        }
        for e in edits {
            if let Edit::Predicate { label, .. } = e {
                if !label.contains('.') && !new.formulas().any(|f| &f.label == label) {
                    return Err(format!("label {label} lost"));
                }
            }
        }

        // Extents follow the individuals of the updated model.
        let members = |c: &str| -> Vec<Formula> {
            m.individuals.iter().filter(|i| i.concept == c).map(|i| id(&i.name)).collect()
        };
        for c in m.concepts.iter().filter(|c| c.is_variable) {
            let x = format!("X_{}", c.name);
            let inds = members(&c.name);
            let value = if inds.is_empty() { Formula::EmptySet } else { Formula::SetLit(inds) };
            if !new.initialisation.iter().any(|s| s.target == x && s.value == value) {
                return Err(format!("{x} is not initialised to the individuals of {}", c.name));
            }
        }
        let mut expected: Vec<Formula> = Vec::new();
        for c in m.concepts.iter().filter(|c| !c.is_variable) {
            let inds: Vec<Formula> = m.individuals.iter().filter(|i| i.concept == c.name).map(|i| id(&i.name)).collect();
            if !inds.is_empty() {
                expected.push(Formula::binary(BinOp::Eq, id(&c.name), Formula::SetLit(inds)));
            }
        }
        let mut extents: Vec<Formula> =
            new.properties.iter().map(|p| p.formula.clone()).filter(|f| is_extent(f, &concepts)).collect();
        expected.sort();
        extents.sort();
        if expected != extents {
            return Err(format!("extents {extents:?}, expected {expected:?}"));
        }
        Ok(())
    }
}

/// What an edit may refer to at one level.
pub struct Targets {
    pub concepts: Vec<(String, bool)>,
    pub local_constant_concepts: Vec<String>,
    pub individuals: Vec<(String, String)>,
    pub custom_sets: Vec<String>,
    pub enumerated: Vec<(String, Vec<String>)>,
    pub local_enumerated: Vec<String>,
    pub variables: Vec<String>,
}

pub fn mentions(chain: &[DomainModel], concept: &str) -> bool {
    chain.iter().any(|m| {
        m.relations
            .iter()
            .any(|r| !r.is_variable && (r.domain == concept || r.range == concept))
            || m.attributes.iter().any(|a| {
                !a.is_variable
                    && (a.domain.free_names().contains(concept)
                        || matches!(&a.range, AttributeRange::Expr(f) if f.free_names().contains(concept)))
            })
    })
}

pub fn targets(case: &Case) -> Targets {
    let chain = &case.chain[..=case.level];
    let model = case.model();
    let comp = &case.comps[case.level];
    let mut t = Targets {
        concepts: Vec::new(),
        local_constant_concepts: Vec::new(),
        individuals: Vec::new(),
        custom_sets: Vec::new(),
        enumerated: Vec::new(),
        local_enumerated: Vec::new(),
        variables: case.comps[..=case.level].iter().flat_map(|c| c.variables.clone()).collect(),
    };
    for m in chain {
        t.concepts.extend(m.concepts.iter().map(|c| (c.name.clone(), c.is_variable)));
        t.individuals.extend(m.individuals.iter().map(|i| (i.name.clone(), i.concept.clone())));
        for ds in &m.data_sets {
            match &ds.kind {
                DataSetKind::Custom { .. } => t.custom_sets.push(ds.name.clone()),
                DataSetKind::Enumerated(items) => t.enumerated.push((ds.name.clone(), items.clone())),
            }
        }
    }
    t.local_constant_concepts = model
        .concepts
        .iter()
        .filter(|c| !c.is_variable && !mentions(case.chain, &c.name))
        .map(|c| c.name.clone())
        .collect();
    t.local_enumerated = comp
        .sets
        .iter()
        .filter_map(|s| match s {
            SetDecl::Enumerated { name, .. } => Some(name.clone()),
            _ => None,
        })
        .collect();
    t
}

pub fn individuals_of(scope: &SymbolTable, t: &Targets, concept: &str) -> Vec<String> {
    t.individuals
        .iter()
        .filter(|(_, c)| scope.is_subconcept(c, concept))
        .map(|(i, _)| i.clone())
        .collect()
}

pub const ATTRIBUTE_ARROWS: [Arrow; 3] = [Arrow::TotalFunction, Arrow::PartialFunction, Arrow::Relation];

pub fn attribute_image(t: &Targets, range: &str, pick: usize) -> Option<Formula> {
    match range {
        "NATURAL" => Some(Formula::Num(pick as u64)),
        "BOOL" => Some(id(["TRUE", "FALSE"][pick % 2])),
        r => t
            .enumerated
            .iter()
            .find(|(s, _)| s == r)
            .and_then(|(_, items)| items.get(pick % items.len().max(1)).map(|i| id(i))),
    }
}

/// Every single-edit session that applies at this level.
pub fn catalogue(case: &Case) -> Vec<Vec<Edit>> {
    let t = targets(case);
    let scope = case.scope();
    let mut out: Vec<Vec<Edit>> = vec![
        vec![Edit::AbstractSet("NewC".into())],
        vec![Edit::DataSet("NewD".into())],
        vec![Edit::Enumerated("NewE".into(), vec!["ne1".into(), "ne2".into()])],
        vec![Edit::Enumerated("NewEmpty".into(), vec![])],
    ];
    for s in &t.local_enumerated {
        out.push(vec![Edit::Item {
            set: s.clone(),
            item: "nitem".into(),
        }]);
    }
    for (c, _) in &t.concepts {
        out.push(vec![Edit::SubConcept {
            name: "NewSub".into(),
            of: c.clone(),
        }]);
        out.push(vec![Edit::Individual {
            name: "nind".into(),
            of: c.clone(),
        }]);
    }
    for s in ["NATURAL", "INTEGER", "BOOL"].iter().map(|s| s.to_string()).chain(t.custom_sets.iter().cloned()) {
        out.push(vec![Edit::DataValue {
            name: "nval".into(),
            of: s,
        }]);
    }
    for c in &t.local_constant_concepts {
        out.push(vec![Edit::Variable { concept: c.clone() }]);
    }
    let mut ranges: Vec<String> = vec!["NATURAL".into(), "BOOL".into()];
    ranges.extend(t.custom_sets.iter().cloned());
    ranges.extend(t.enumerated.iter().map(|(s, _)| s.clone()));
    for (dom, dom_var) in &t.concepts {
        for range in &ranges {
            for arrow in ATTRIBUTE_ARROWS {
                for typed in [false, true] {
                    for variable in [false, true] {
                        if *dom_var && !variable {
                            continue;
                        }
                        let mut maplets = Vec::new();
                        if let (Some(a), Some(img)) =
                            (individuals_of(&scope, &t, dom).first(), attribute_image(&t, range, 1))
                        {
                            maplets.push((a.clone(), img));
                        }
                        out.push(vec![Edit::Attribute(Element {
                            name: "nat".into(),
                            variable,
                            arrow,
                            typed,
                            domain: dom.clone(),
                            range: range.clone(),
                            maplets,
                        })]);
                    }
                }
            }
        }
    }
    for (dom, dom_var) in &t.concepts {
        for (ran, ran_var) in &t.concepts {
            for arrow in Arrow::ALL {
                for typed in [false, true] {
                    for variable in [false, true] {
                        if (*dom_var || *ran_var) && !variable {
                            continue;
                        }
                        let a = individuals_of(&scope, &t, dom);
                        let b = individuals_of(&scope, &t, ran);
                        let maplets = match (a.first(), b.last()) {
                            (Some(a), Some(b)) => vec![(a.clone(), id(b))],
                            _ => Vec::new(),
                        };
                        out.push(vec![Edit::Relation(Element {
                            name: "nrel".into(),
                            variable,
                            arrow,
                            typed,
                            domain: dom.clone(),
                            range: ran.clone(),
                            maplets,
                        })]);
                    }
                }
            }
        }
    }
    let (c, _) = &t.concepts[0];
    out.push(vec![Edit::Predicate {
        label: "user1".into(),
        formula: Formula::binary(BinOp::Ge, Formula::app("card", vec![id(c)]), Formula::Num(0)),
        invariant: false,
    }]);
    out.push(vec![Edit::Predicate {
        label: "9.1".into(),
        formula: Formula::binary(BinOp::Neq, id(c), Formula::EmptySet),
        invariant: false,
    }]);
    if let Some(v) = t.variables.first() {
        out.push(vec![Edit::Predicate {
            label: "user2".into(),
            formula: Formula::binary(BinOp::Eq, id(v), id(v)),
            invariant: true,
        }]);
    }
    out
}

/// One to four compatible edits drawn at random.
pub fn random_edits(case: &Case, d: &mut Draw) -> Vec<Edit> {
    let t = targets(case);
    let scope = case.scope();
    let mut edits: Vec<Edit> = Vec::new();
    let mut made_variable: Vec<String> = Vec::new();
    if d.chance(3) {
        if let Some(c) = d.pick(&t.local_constant_concepts) {
            made_variable.push(c.clone());
            edits.push(Edit::Variable { concept: c.clone() });
        }
    }
    let is_var = |c: &str| made_variable.iter().any(|m| m == c) || t.concepts.iter().any(|(n, v)| n == c && *v);
    let mut new_concepts: Vec<String> = Vec::new();
    for k in 0..1 + d.below(4) {
        let mut concepts: Vec<String> = t.concepts.iter().map(|(c, _)| c.clone()).collect();
        concepts.extend(new_concepts.iter().cloned());
        let edit = match d.below(10) {
            0 => {
                let n = format!("NewC{k}");
                new_concepts.push(n.clone());
                Edit::AbstractSet(n)
            }
            1 => Edit::DataSet(format!("NewD{k}")),
            2 => Edit::Enumerated(format!("NewE{k}"), (0..d.below(3)).map(|j| format!("ne{k}_{j}")).collect()),
            3 if !t.local_enumerated.is_empty() => Edit::Item {
                set: d.pick(&t.local_enumerated).unwrap().clone(),
                item: format!("nitem{k}"),
            },
            4 => {
                let n = format!("NewSub{k}");
                let of = d.pick(&concepts).unwrap().clone();
                new_concepts.push(n.clone());
                Edit::SubConcept { name: n, of }
            }
            5 => Edit::Individual {
                name: format!("nind{k}"),
                of: d.pick(&concepts).unwrap().clone(),
            },
            6 => {
                let mut sets = vec!["NATURAL".to_string(), "INTEGER".into()];
                sets.extend(t.custom_sets.iter().cloned());
                Edit::DataValue {
                    name: format!("nval{k}"),
                    of: d.pick(&sets).unwrap().clone(),
                }
            }
            7 => {
                let dom = d.pick(&t.concepts).unwrap().0.clone();
                let mut ranges = vec!["NATURAL".to_string(), "BOOL".into()];
                ranges.extend(t.custom_sets.iter().cloned());
                ranges.extend(t.enumerated.iter().map(|(s, _)| s.clone()));
                let range = d.pick(&ranges).unwrap().clone();
                let mut maplets = Vec::new();
                let inds = individuals_of(&scope, &t, &dom);
                if d.chance(2) {
                    let pick = d.below(5);
                    if let (Some(a), Some(img)) = (d.pick(&inds), attribute_image(&t, &range, pick)) {
                        maplets.push((a.clone(), img));
                    }
                }
                Edit::Attribute(Element {
                    name: format!("nat{k}"),
                    variable: is_var(&dom) || d.chance(2),
                    arrow: *d.pick(&ATTRIBUTE_ARROWS).unwrap(),
                    typed: d.chance(2),
                    domain: dom,
                    range,
                    maplets,
                })
            }
            8 => {
                let dom = d.pick(&t.concepts).unwrap().0.clone();
                let ran = d.pick(&t.concepts).unwrap().0.clone();
                let a = individuals_of(&scope, &t, &dom);
                let b = individuals_of(&scope, &t, &ran);
                let mut maplets: Vec<(String, Formula)> = Vec::new();
                if d.chance(2) {
                    for x in a.iter().take(2) {
                        if let Some(y) = d.pick(&b) {
                            maplets.push((x.clone(), id(y)));
                        }
                    }
                }
                Edit::Relation(Element {
                    name: format!("nrel{k}"),
                    variable: is_var(&dom) || is_var(&ran) || d.chance(2),
                    arrow: *d.pick(&Arrow::ALL).unwrap(),
                    typed: d.chance(2),
                    domain: dom,
                    range: ran,
                    maplets,
                })
            }
            _ => {
                let c = d.pick(&t.concepts).unwrap().0.clone();
                Edit::Predicate {
                    label: if d.chance(2) { format!("user{k}") } else { format!("9.{k}") },
                    formula: Formula::binary(BinOp::Ge, Formula::app("card", vec![id(&c)]), Formula::Num(k as u64)),
                    invariant: false,
                }
            }
        };
        edits.push(edit);
    }
    edits
}

pub fn corpus_chain(files: &[&str]) -> Vec<DomainModel> {
    let models = files
        .iter()
        .map(|f| parse_domain_model(&super::source(f).text).unwrap())
        .collect();
    order_chain(models).unwrap()
}

pub fn corpus_chains() -> Vec<Vec<DomainModel>> {
    vec![
        corpus_chain(&["landing_gear/lg0.dmod", "landing_gear/lg1.dmod"]),
        corpus_chain(&["ertms/ertms0.dmod", "ertms/ertms1.dmod", "ertms/ertms2.dmod"]),
    ]
}

pub const ALL_RULES: [RuleId; 12] = [
    RuleId::Rule101,
    RuleId::Rule102,
    RuleId::Rule103,
    RuleId::Rule104,
    RuleId::Rule105,
    RuleId::Rule106,
    RuleId::Rule107,
    RuleId::Rule108,
    RuleId::Attribute,
    RuleId::Relation,
    RuleId::Predicate,
    RuleId::Maplet,
];
