//! Random inputs for the property suites.

use proptest::prelude::*;

use kaos2b::bsystem::{
    Action, ActionKind, Classification, Component, ComponentKind, Event, EventStatus, Labeled,
    LogicFormula, SetDecl, Substitution,
};
use kaos2b::domain_model::{
    Atom, Attribute, AttributeRange, Cardinality, Concept, DataSet, DataSetKind, DataValue,
    DomainModel, HornClause, Individual, Maplet, Predicate, PredicateBody, Relation, Term,
};
use kaos2b::formula::{Arrow, BinOp, Formula, Quantifier};
use kaos2b::goal::{GoalModel, Refinement, RefinementOp};

const NAMES: &[&str] = &["a", "b", "c", "d", "f1", "g2", "x_y", "S", "Tk", "TRUE", "NAT", "h'"];
const BOUND: &[&str] = &["x", "y", "z"];
const FUNCS: &[&str] = &["f", "dom", "ran", "card", "POW", "g"];

fn binop() -> impl Strategy<Value = BinOp> {
    let mut ops: Vec<BinOp> = BinOp::ALL.to_vec();
    ops.extend(Arrow::ALL.iter().map(|a| BinOp::Arrow(*a)));
    prop::sample::select(ops)
}

fn name(pool: &'static [&'static str]) -> impl Strategy<Value = String> {
    prop::sample::select(pool).prop_map(str::to_string)
}

/// Arbitrary formula trees, including ones that are not well typed.
pub fn formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        4 => name(NAMES).prop_map(Formula::Ident),
        2 => (0u64..1000).prop_map(Formula::Num),
        1 => Just(Formula::Truth),
        1 => Just(Formula::EmptySet),
    ];
    leaf.prop_recursive(4, 32, 3, |inner| {
        prop_oneof![
            6 => (binop(), inner.clone(), inner.clone()).prop_map(|(op, l, r)| Formula::binary(op, l, r)),
            1 => prop::collection::vec(inner.clone(), 1..3).prop_map(Formula::SetLit),
            1 => (
                prop::bool::ANY,
                prop::sample::subsequence(BOUND, 1..3),
                inner.clone()
            )
                .prop_map(|(all, vars, body)| Formula::Quant {
                    quantifier: if all { Quantifier::ForAll } else { Quantifier::Exists },
                    vars: vars.into_iter().map(str::to_string).collect(),
                    body: Box::new(body),
                }),
            1 => inner.clone().prop_map(|f| Formula::Not(Box::new(f))),
            1 => inner.clone().prop_map(|f| Formula::Neg(Box::new(f))),
            2 => (
                prop_oneof![name(FUNCS).prop_map(Formula::Ident), inner.clone()],
                prop::collection::vec(inner.clone(), 1..3)
            )
                .prop_map(|(func, args)| Formula::App {
                    func: Box::new(func),
                    args,
                }),
            1 => (inner.clone(), inner.clone()).prop_map(|(r, s)| Formula::Image {
                rel: Box::new(r),
                set: Box::new(s),
            }),
            1 => inner.prop_map(|f| Formula::Inverse(Box::new(f))),
        ]
    })
}

/// Reads choices from a fixed pool of random numbers, wrapping around.
#[derive(Debug)]
pub struct Draw {
    pool: Vec<u16>,
    at: usize,
}

impl Draw {
    pub fn new(pool: Vec<u16>) -> Self {
        Draw { pool, at: 0 }
    }

    pub fn below(&mut self, n: usize) -> usize {
        if n == 0 || self.pool.is_empty() {
            return 0;
        }
        let v = self.pool[self.at % self.pool.len()] as usize;
        self.at += 1;
        v % n
    }

    pub fn chance(&mut self, one_in: usize) -> bool {
        self.below(one_in) == 0
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> Option<&'a T> {
        if items.is_empty() {
            None
        } else {
            Some(&items[self.below(items.len())])
        }
    }
}

pub fn draw() -> impl Strategy<Value = Draw> {
    prop::collection::vec(any::<u16>(), 64..512).prop_map(Draw::new)
}

const CARDS: [Cardinality; 5] = [
    Cardinality { min: 0, max: None },
    Cardinality { min: 0, max: Some(1) },
    Cardinality { min: 1, max: Some(1) },
    Cardinality { min: 1, max: None },
    Cardinality { min: 2, max: Some(3) },
];

const DEFAULT_TYPES: &[&str] = &["NATURAL", "NATURAL1", "INTEGER", "BOOL", "STRING", "FLOAT"];

/// Everything declared so far along the chain.
#[derive(Default)]
struct Visible {
    concepts: Vec<(String, bool)>,
    parents: Vec<(String, String)>,
    individuals: Vec<(String, String)>,
    enumerated: Vec<(String, Vec<String>)>,
    custom: Vec<String>,
    values: Vec<(String, String)>,
    relations: Vec<(String, bool)>,
    attributes: Vec<(String, bool)>,
}

impl Visible {
    fn is_variable(&self, concept: &str) -> bool {
        self.concepts.iter().any(|(c, v)| c == concept && *v)
    }

    fn is_sub(&self, concept: &str, of: &str) -> bool {
        let mut cur = concept.to_string();
        loop {
            if cur == of {
                return true;
            }
            match self.parents.iter().find(|(c, _)| *c == cur) {
                Some((_, p)) => cur = p.clone(),
                None => return false,
            }
        }
    }

    fn individuals_of(&self, concept: &str) -> Vec<String> {
        self.individuals
            .iter()
            .filter(|(_, c)| self.is_sub(c, concept))
            .map(|(i, _)| i.clone())
            .collect()
    }
}

/// Named elements plus predicates of one model.
pub fn element_count(m: &DomainModel) -> usize {
    m.declared_names().len() + m.all_predicates().count()
}

/// A well-formed root-first chain of one to three models.
pub fn build_chain(d: &mut Draw) -> Vec<DomainModel> {
    let levels = 1 + d.below(3);
    let mut vis = Visible::default();
    let mut chain: Vec<DomainModel> = Vec::new();
    for l in 0..levels {
        let mut m = DomainModel::new(format!("m{l}"));
        m.parent = chain.last().map(|p| p.name.clone());
        level(d, l, &mut m, &mut vis);
        chain.push(m);
    }
    chain
}

fn level(d: &mut Draw, l: usize, m: &mut DomainModel, vis: &mut Visible) {
    for k in 0..1 + d.below(3) {
        let name = format!("C{l}_{k}");
        let parent = if d.chance(3) {
            d.pick(&vis.concepts).map(|(c, _)| c.clone())
        } else {
            None
        };
        let is_variable = d.chance(4);
        if let Some(p) = &parent {
            vis.parents.push((name.clone(), p.clone()));
        }
        vis.concepts.push((name.clone(), is_variable));
        m.concepts.push(Concept {
            name,
            parent,
            is_variable,
        });
    }

    for k in 0..d.below(3) {
        let name = format!("D{l}_{k}");
        if d.chance(2) {
            let items: Vec<String> = (0..1 + d.below(2)).map(|j| format!("e{l}_{k}_{j}")).collect();
            vis.enumerated.push((name.clone(), items.clone()));
            m.data_sets.push(DataSet {
                name,
                kind: DataSetKind::Enumerated(items),
            });
        } else {
            let defined_by = if d.chance(2) {
                let id = format!("def{l}_{k}");
                m.predicates.push(Predicate::plain(
                    id.clone(),
                    Formula::binary(
                        BinOp::Eq,
                        Formula::ident(&name),
                        Formula::binary(BinOp::Range, Formula::Num(1), Formula::Num(5)),
                    ),
                ));
                Some(id)
            } else {
                None
            };
            vis.custom.push(name.clone());
            m.data_sets.push(DataSet {
                name,
                kind: DataSetKind::Custom { defined_by },
            });
        }
    }

    for k in 0..d.below(3) {
        let mut types: Vec<String> = DEFAULT_TYPES.iter().map(|s| s.to_string()).collect();
        types.extend(vis.custom.iter().cloned());
        let value_of = d.pick(&types).unwrap().clone();
        let name = format!("v{l}_{k}");
        vis.values.push((name.clone(), value_of.clone()));
        m.data_values.push(DataValue { name, value_of });
    }

    for k in 0..d.below(5) {
        let concept = d.pick(&vis.concepts).unwrap().0.clone();
        let name = format!("i{l}_{k}");
        vis.individuals.push((name.clone(), concept.clone()));
        m.individuals.push(Individual { name, concept });
    }

    for k in 0..d.below(4) {
        let domain = d.pick(&vis.concepts).unwrap().0.clone();
        let range = d.pick(&vis.concepts).unwrap().0.clone();
        let mut re = Relation::new(format!("r{l}_{k}"), domain.clone(), range.clone());
        re.is_variable = vis.is_variable(&domain) || vis.is_variable(&range) || d.chance(4);
        re.is_transitive = d.chance(4);
        match d.below(3) {
            0 => re.is_symmetric = true,
            1 => re.is_asymmetric = true,
            _ => {}
        }
        match d.below(3) {
            0 => re.is_reflexive = true,
            1 => re.is_irreflexive = true,
            _ => {}
        }
        re.domain_cardinality = CARDS[d.below(CARDS.len())];
        re.range_cardinality = CARDS[d.below(CARDS.len())];
        let ante = vis.individuals_of(&domain);
        let img = vis.individuals_of(&range);
        if !ante.is_empty() && !img.is_empty() && d.chance(2) {
            let mut seen: Vec<String> = Vec::new();
            for _ in 0..1 + d.below(2) {
                let a = d.pick(&ante).unwrap().clone();
                if seen.contains(&a) {
                    continue;
                }
                seen.push(a.clone());
                m.relation_maplets.push(Maplet {
                    owner: re.name.clone(),
                    antecedent: a,
                    image: Formula::ident(d.pick(&img).unwrap()),
                });
            }
        }
        vis.relations.push((re.name.clone(), re.is_variable));
        m.relations.push(re);
    }

    for k in 0..d.below(3) {
        let name = format!("a{l}_{k}");
        let (domain, domain_concept, variable_domain) = match d.pick(&vis.relations) {
            Some((r, var)) if d.chance(4) => (Formula::app("dom", vec![Formula::ident(r)]), None, *var),
            _ => {
                let c = d.pick(&vis.concepts).unwrap().0.clone();
                let var = vis.is_variable(&c);
                (Formula::ident(&c), Some(c), var)
            }
        };
        let range = match d.below(6) {
            0 => AttributeRange::Enumeration((0..2).map(|j| format!("{name}_{j}")).collect()),
            1 if !vis.enumerated.is_empty() => {
                AttributeRange::Expr(Formula::ident(&d.pick(&vis.enumerated).unwrap().0))
            }
            2 if !vis.custom.is_empty() => {
                let s = d.pick(&vis.custom).unwrap().clone();
                if d.chance(2) {
                    AttributeRange::Expr(Formula::app("POW", vec![Formula::ident(s)]))
                } else {
                    AttributeRange::Expr(Formula::ident(s))
                }
            }
            3 => AttributeRange::Expr(Formula::ident(&d.pick(&vis.concepts).unwrap().0)),
            _ => AttributeRange::Expr(Formula::ident(*d.pick(&["NATURAL", "INTEGER", "BOOL"]).unwrap())),
        };
        let is_functional = d.chance(2) || d.chance(2);
        let at = Attribute {
            name: name.clone(),
            domain,
            range: range.clone(),
            is_variable: variable_domain || d.chance(3),
            is_functional,
            is_total: is_functional && d.chance(2),
        };
        if let Some(c) = domain_concept {
            let ante = vis.individuals_of(&c);
            if !ante.is_empty() && d.chance(2) {
                let a = d.pick(&ante).unwrap().clone();
                if let Some(image) = attribute_image(d, vis, &range) {
                    m.attribute_maplets.push(Maplet {
                        owner: name.clone(),
                        antecedent: a,
                        image,
                    });
                }
            }
        }
        vis.attributes.push((name, at.is_variable));
        m.attributes.push(at);
    }

    let mut names: Vec<String> = vis.concepts.iter().map(|(c, _)| c.clone()).collect();
    names.extend(vis.enumerated.iter().map(|(s, _)| s.clone()));
    names.extend(vis.custom.iter().cloned());
    for k in 0..d.below(3) {
        let set = d.pick(&names).unwrap().clone();
        let body = match d.below(3) {
            0 => Formula::binary(
                BinOp::Ge,
                Formula::app("card", vec![Formula::ident(set)]),
                Formula::Num(d.below(3) as u64),
            ),
            1 => Formula::binary(BinOp::Neq, Formula::ident(set), Formula::EmptySet),
            _ => Formula::forall(
                vec!["q".into()],
                Formula::implies(
                    Formula::binary(BinOp::In, Formula::ident("q"), Formula::ident(&set)),
                    Formula::binary(BinOp::In, Formula::ident("q"), Formula::ident(&set)),
                ),
            ),
        };
        m.predicates.push(Predicate::plain(format!("p{l}_{k}"), body));
    }

    if l > 0 {
        for k in 0..d.below(3) {
            let head = d.pick(&vis.concepts).unwrap().0.clone();
            let body = d.pick(&vis.concepts).unwrap().0.clone();
            m.gluing_invariants.push(Predicate {
                id: format!("g{l}_{k}"),
                body: PredicateBody::Horn(HornClause {
                    head: vec![Atom {
                        symbol: head,
                        args: vec![Term::Var("o".into())],
                    }],
                    body: vec![Atom {
                        symbol: body,
                        args: vec![Term::Var("o".into())],
                    }],
                }),
            });
        }
    }
}

fn attribute_image(d: &mut Draw, vis: &Visible, range: &AttributeRange) -> Option<Formula> {
    match range {
        AttributeRange::Enumeration(items) => Some(Formula::ident(d.pick(items)?)),
        AttributeRange::Expr(f) => match f.as_ident()? {
            "BOOL" => Some(Formula::ident(*d.pick(&["TRUE", "FALSE"])?)),
            "NATURAL" | "INTEGER" => Some(Formula::Num(d.below(10) as u64)),
            r => {
                if let Some((_, items)) = vis.enumerated.iter().find(|(s, _)| s == r) {
                    return Some(Formula::ident(d.pick(items)?));
                }
                if vis.custom.iter().any(|s| s == r) {
                    let owned: Vec<&String> =
                        vis.values.iter().filter(|(_, t)| t == r).map(|(v, _)| v).collect();
                    return d.pick(&owned).map(|v| Formula::ident(*v));
                }
                let inds = vis.individuals_of(r);
                d.pick(&inds).map(Formula::ident)
            }
        },
    }
}

pub fn chain() -> impl Strategy<Value = Vec<DomainModel>> {
    draw().prop_map(|mut d| build_chain(&mut d))
}

/// A single model with extra predicates over arbitrary formulas; syntax only.
pub fn dmod_model() -> impl Strategy<Value = DomainModel> {
    (chain(), prop::collection::vec(formula(), 0..4), prop::bool::ANY).prop_map(|(chain, extra, horn_terms)| {
        let mut m = chain.last().unwrap().clone();
        for (i, f) in extra.into_iter().enumerate() {
            m.predicates.push(Predicate::plain(format!("x{i}"), f));
        }
        if horn_terms {
            m.gluing_invariants.push(Predicate {
                id: "gx".into(),
                body: PredicateBody::Horn(HornClause {
                    head: vec![Atom {
                        symbol: "st".into(),
                        args: vec![Term::Name("A1".into()), Term::Str("on".into())],
                    }],
                    body: vec![
                        Atom {
                            symbol: "C".into(),
                            args: vec![Term::Var("v".into())],
                        },
                        Atom {
                            symbol: "s2".into(),
                            args: vec![Term::Var("v".into()), Term::Str("off".into())],
                        },
                    ],
                }),
            });
        }
        m
    })
}

fn goal_tree(d: &mut Draw, gm: &mut GoalModel, parent: &str, depth: usize) {
    if depth == 0 || d.chance(3) {
        return;
    }
    let operator = *d
        .pick(&[RefinementOp::And, RefinementOp::Or, RefinementOp::Milestone])
        .unwrap();
    let children: Vec<String> = (0..2 + d.below(3)).map(|i| format!("{parent}_{i}")).collect();
    gm.goals.extend(children.iter().cloned());
    gm.refinements.push(Refinement {
        parent: parent.to_string(),
        operator,
        children: children.clone(),
    });
    for c in &children {
        goal_tree(d, gm, c, depth - 1);
    }
}

pub fn goal_model() -> impl Strategy<Value = GoalModel> {
    draw().prop_map(|mut d| {
        let mut gm = GoalModel {
            name: "gm".into(),
            goals: vec!["G".into()],
            refinements: Vec::new(),
        };
        goal_tree(&mut d, &mut gm, "G", 3);
        gm
    })
}

fn label() -> impl Strategy<Value = String> {
    prop_oneof![
        (0u8..4, 1u8..30).prop_map(|(a, b)| format!("{a}.{b}")),
        (1u8..20).prop_map(|n| format!("inv{n}")),
        (1u8..9).prop_map(|n| format!("s{n}")),
    ]
}

fn logic(theorems: bool, plain: Classification) -> impl Strategy<Value = LogicFormula> {
    (label(), formula(), prop::bool::weighted(if theorems { 0.2 } else { 0.0 })).prop_map(
        move |(label, formula, theorem)| LogicFormula {
            label,
            formula,
            structure: None,
            classification: if theorem { Classification::Theorem } else { plain },
        },
    )
}

const SET_NAMES: &[&str] = &["A", "B", "DataSet_1", "E", "F"];
const ITEMS: &[&str] = &["on", "off", "up", "down"];

fn set_decl() -> impl Strategy<Value = SetDecl> {
    prop_oneof![
        (name(SET_NAMES), prop::option::of(Just("dataset".to_string())))
            .prop_map(|(name, annotation)| SetDecl::Abstract { name, annotation }),
        (name(SET_NAMES), prop::sample::subsequence(ITEMS, 0..4)).prop_map(|(name, items)| {
            SetDecl::Enumerated {
                name,
                items: items.into_iter().map(str::to_string).collect(),
            }
        }),
    ]
}

fn action() -> impl Strategy<Value = Action> {
    let target = prop_oneof![
        name(NAMES).prop_map(Formula::Ident),
        (name(NAMES), prop::collection::vec(name(NAMES).prop_map(Formula::Ident), 1..3))
            .prop_map(|(f, args)| Formula::app(f, args)),
    ];
    (1u8..9, target, prop::bool::ANY, formula()).prop_map(|(n, target, assign, value)| Action {
        label: format!("act{n}"),
        target,
        kind: if assign {
            ActionKind::Assign(value)
        } else {
            ActionKind::BecomesIn(value)
        },
    })
}

fn event() -> impl Strategy<Value = Event> {
    (
        Just("ev".to_string()),
        prop::bool::ANY,
        prop::sample::subsequence(BOUND, 0..3),
        prop::collection::vec(
            (1u8..9, formula()).prop_map(|(n, formula)| Labeled {
                label: format!("grd{n}"),
                formula,
            }),
            0..3,
        ),
        prop::collection::vec(action(), 0..3),
    )
        .prop_map(|(name, convergent, params, guards, actions)| Event {
            name,
            status: if convergent {
                EventStatus::Convergent
            } else {
                EventStatus::Ordinary
            },
            params: params.into_iter().map(str::to_string).collect(),
            guards,
            actions,
        })
}

/// Components as the parser produces them: no structure, no gluing class.
pub fn component() -> impl Strategy<Value = Component> {
    let idents = || prop::collection::vec(name(&["k1", "k2", "T_r", "X_C", "r", "att"]), 0..3);
    (
        prop::option::of(Just("sys0".to_string())),
        prop::collection::vec(set_decl(), 0..3),
        idents(),
        idents(),
        prop::collection::vec(logic(true, Classification::Property), 0..4),
        prop::collection::vec(logic(true, Classification::Invariant), 0..4),
        prop::collection::vec(
            (1u8..9, name(NAMES), formula()).prop_map(|(n, target, value)| Substitution {
                label: format!("init{n}"),
                target,
                value,
            }),
            0..3,
        ),
        prop::collection::vec(event(), 0..3),
    )
        .prop_map(
            |(refines, mut sets, constants, variables, properties, invariants, initialisation, mut events)| {
                for (i, s) in sets.iter_mut().enumerate() {
                    match s {
                        SetDecl::Abstract { name, .. } | SetDecl::Enumerated { name, .. } => {
                            name.push_str(&i.to_string())
                        }
                    }
                }
                for (i, e) in events.iter_mut().enumerate() {
                    e.name.push_str(&i.to_string());
                }
                Component {
                    name: "comp".into(),
                    kind: match refines {
                        Some(refines) => ComponentKind::Refinement { refines },
                        None => ComponentKind::System,
                    },
                    sets,
                    constants,
                    variables,
                    properties,
                    invariants,
                    initialisation,
                    events,
                }
            },
        )
}
