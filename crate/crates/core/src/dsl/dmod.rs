use super::ParseError;
use crate::domain_model::{
    Atom, Attribute, AttributeRange, Cardinality, Concept, DataSet, DataSetKind, DataValue,
    DomainModel, HornClause, Individual, Maplet, Predicate, PredicateBody, Relation, Term,
};
use crate::error::SyntaxError;
use crate::formula::{Cursor, LexOptions, Token};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    Concepts,
    Relations,
    Attributes,
    DataSets,
    DataValues,
    Individuals,
    Maplets,
    Predicates,
    Gluing,
}

const SECTIONS: &[(&[&str], Section)] = &[
    (&["concepts"], Section::Concepts),
    (&["relations"], Section::Relations),
    (&["attributes"], Section::Attributes),
    (&["data", "sets"], Section::DataSets),
    (&["data", "values"], Section::DataValues),
    (&["individuals"], Section::Individuals),
    (&["maplets"], Section::Maplets),
    (&["predicates"], Section::Predicates),
    (&["gluing", "invariants"], Section::Gluing),
];

const RESERVED: &[&str] = &[
    "concepts",
    "relations",
    "attributes",
    "data",
    "individuals",
    "maplets",
    "predicates",
    "gluing",
    "concept",
    "relation",
    "attribute",
    "individual",
    "maplet",
    "enumerated",
    "custom",
    "domain",
];

pub fn parse_domain_model(text: &str) -> Result<DomainModel, ParseError> {
    let mut c = Cursor::from_source(text, LexOptions::default())?;
    let mut p = DmodParser { c: &mut c };
    let model = p.model()?;
    Ok(model)
}

struct DmodParser<'a> {
    c: &'a mut Cursor,
}

impl DmodParser<'_> {
    fn name(&mut self) -> Result<String, SyntaxError> {
        if let Token::Ident(n) = self.c.peek() {
            if RESERVED.contains(&n.as_str()) {
                return Err(self.c.error(format!("'{n}' is a reserved word")));
            }
        }
        self.c.expect_ident()
    }

    fn colon(&mut self) -> Result<(), SyntaxError> {
        self.c.expect_op(":")
    }

    fn boolean(&mut self) -> Result<bool, SyntaxError> {
        match self.c.peek() {
            Token::Ident(b) if b == "true" || b == "TRUE" => {
                self.c.next();
                Ok(true)
            }
            Token::Ident(b) if b == "false" || b == "FALSE" => {
                self.c.next();
                Ok(false)
            }
            _ => Err(self.c.unexpected("true or false")),
        }
    }

    fn number(&mut self) -> Result<u32, SyntaxError> {
        match self.c.peek() {
            Token::Num(n) => {
                let n = u32::try_from(*n).map_err(|_| self.c.error("cardinality out of range"))?;
                self.c.next();
                Ok(n)
            }
            _ => Err(self.c.unexpected("number")),
        }
    }

    fn cardinality(&mut self) -> Result<Cardinality, SyntaxError> {
        let min = self.number()?;
        self.c.expect_op("..")?;
        let max = if self.c.eat_op("*") {
            None
        } else {
            Some(self.number()?)
        };
        Ok(Cardinality::new(min, max))
    }

    fn section_header(&mut self) -> Option<Section> {
        for (words, section) in SECTIONS {
            let n = words.len();
            let matches = words.iter().enumerate().all(|(i, w)| self.c.is_keyword_at(i, w))
                && matches!(self.c.peek_at(n), Token::Op(":"));
            if matches {
                for _ in 0..=n {
                    self.c.next();
                }
                return Some(*section);
            }
        }
        None
    }

    fn model(&mut self) -> Result<DomainModel, SyntaxError> {
        self.c.expect_keyword("domain")?;
        self.c.expect_keyword("model")?;
        let mut m = DomainModel::new(self.name()?);
        if self.c.eat_keyword("parent") {
            self.c.expect_keyword("domain")?;
            self.c.expect_keyword("model")?;
            m.parent = Some(self.name()?);
        }
        self.c.expect(&Token::LBrace)?;
        let mut section = None;
        let mut maplets = Vec::new();
        while !self.c.eat(&Token::RBrace) {
            if let Some(s) = self.section_header() {
                section = Some(s);
                continue;
            }
            match section {
                None => return Err(self.c.unexpected("section header")),
                Some(Section::Concepts) => m.concepts.push(self.concept()?),
                Some(Section::Relations) => m.relations.push(self.relation()?),
                Some(Section::Attributes) => m.attributes.push(self.attribute()?),
                Some(Section::DataSets) => m.data_sets.push(self.data_set()?),
                Some(Section::DataValues) => m.data_values.push(self.data_value()?),
                Some(Section::Individuals) => m.individuals.push(self.individual()?),
                Some(Section::Maplets) => maplets.push(self.maplet()?),
                Some(Section::Predicates) => m.predicates.push(self.predicate()?),
                Some(Section::Gluing) => m.gluing_invariants.push(self.predicate()?),
            }
        }
        if !self.c.at_eof() {
            return Err(self.c.unexpected("end of input"));
        }
        for mp in maplets {
            if m.relations.iter().any(|r| r.name == mp.owner) {
                m.relation_maplets.push(mp);
            } else {
                m.attribute_maplets.push(mp);
            }
        }
        Ok(m)
    }

    fn concept(&mut self) -> Result<Concept, SyntaxError> {
        self.c.expect_keyword("concept")?;
        let name = self.name()?;
        let mut parent = None;
        if self.c.eat_phrase(&["parent", "concept"]) {
            parent = Some(self.name()?);
        }
        let mut is_variable = false;
        if self.c.eat_phrase(&["is", "variable"]) {
            self.colon()?;
            is_variable = self.boolean()?;
        }
        Ok(Concept {
            name,
            parent,
            is_variable,
        })
    }

    /// Parses `{ flag: value; ... }`, calling `set` for each flag.
    fn flag_block(
        &mut self,
        mut set: impl FnMut(&mut Self, &str) -> Result<bool, SyntaxError>,
    ) -> Result<(), SyntaxError> {
        if !self.c.eat(&Token::LBrace) {
            return Ok(());
        }
        let mut seen: Vec<String> = Vec::new();
        while !self.c.eat(&Token::RBrace) {
            let span = self.c.span();
            let mut words = Vec::new();
            while let Token::Ident(w) = self.c.peek() {
                words.push(w.clone());
                self.c.next();
            }
            if words.is_empty() {
                return Err(self.c.unexpected("flag name"));
            }
            let key = words.join(" ");
            self.colon()?;
            if seen.contains(&key) {
                return Err(SyntaxError::new(span.line, span.column, format!("flag '{key}' given twice")));
            }
            if !set(self, &key)? {
                return Err(SyntaxError::new(span.line, span.column, format!("unknown flag '{key}'")));
            }
            seen.push(key);
            if !self.c.eat_op(";") {
                self.c.eat(&Token::Comma);
            }
        }
        Ok(())
    }

    fn relation(&mut self) -> Result<Relation, SyntaxError> {
        self.c.expect_keyword("relation")?;
        let name = self.name()?;
        self.c.expect_keyword("domain")?;
        self.colon()?;
        let domain = self.name()?;
        self.c.expect_keyword("range")?;
        self.colon()?;
        let range = self.name()?;
        let mut r = Relation::new(name, domain, range);
        self.flag_block(|p, key| {
            match key {
                "is variable" => r.is_variable = p.boolean()?,
                "is transitive" => r.is_transitive = p.boolean()?,
                "is symmetric" => r.is_symmetric = p.boolean()?,
                "is asymmetric" => r.is_asymmetric = p.boolean()?,
                "is reflexive" => r.is_reflexive = p.boolean()?,
                "is irreflexive" => r.is_irreflexive = p.boolean()?,
                "domain cardinality" => r.domain_cardinality = p.cardinality()?,
                "range cardinality" => r.range_cardinality = p.cardinality()?,
                _ => return Ok(false),
            }
            Ok(true)
        })?;
        Ok(r)
    }

    fn attribute(&mut self) -> Result<Attribute, SyntaxError> {
        self.c.expect_keyword("attribute")?;
        let name = self.name()?;
        self.c.expect_keyword("domain")?;
        self.colon()?;
        let domain = self.c.formula()?;
        self.c.expect_keyword("range")?;
        self.colon()?;
        let range = if self.c.eat(&Token::LBrace) {
            let items = self.c.ident_list()?;
            self.c.expect(&Token::RBrace)?;
            AttributeRange::Enumeration(items)
        } else {
            AttributeRange::Expr(self.c.formula()?)
        };
        let mut a = Attribute {
            name,
            domain,
            range,
            is_variable: false,
            is_functional: false,
            is_total: false,
        };
        self.flag_block(|p, key| {
            match key {
                "is variable" => a.is_variable = p.boolean()?,
                "is functional" => a.is_functional = p.boolean()?,
                "is total" => a.is_total = p.boolean()?,
                _ => return Ok(false),
            }
            Ok(true)
        })?;
        Ok(a)
    }

    fn data_set(&mut self) -> Result<DataSet, SyntaxError> {
        if self.c.eat_phrase(&["enumerated", "data", "set"]) {
            let name = self.name()?;
            self.c.expect(&Token::LBrace)?;
            self.c.expect_keyword("elements")?;
            self.colon()?;
            let mut items = Vec::new();
            while !self.c.eat(&Token::RBrace) {
                self.c.expect_keyword("data")?;
                self.c.expect_keyword("value")?;
                items.push(self.name()?);
                self.c.eat(&Token::Comma);
            }
            return Ok(DataSet {
                name,
                kind: DataSetKind::Enumerated(items),
            });
        }
        if self.c.eat_phrase(&["custom", "data", "set"]) {
            let name = self.name()?;
            let defined_by = if self.c.eat_phrase(&["defined", "by"]) {
                Some(self.c.expect_ident()?)
            } else {
                None
            };
            return Ok(DataSet {
                name,
                kind: DataSetKind::Custom { defined_by },
            });
        }
        Err(self.c.unexpected("'enumerated data set' or 'custom data set'"))
    }

    fn data_value(&mut self) -> Result<DataValue, SyntaxError> {
        self.c.expect_keyword("data")?;
        self.c.expect_keyword("value")?;
        let name = self.name()?;
        self.c.expect_keyword("type")?;
        self.colon()?;
        let value_of = self.name()?;
        Ok(DataValue { name, value_of })
    }

    fn individual(&mut self) -> Result<Individual, SyntaxError> {
        self.c.expect_keyword("individual")?;
        let name = self.name()?;
        self.c.expect_keyword("of")?;
        let concept = self.name()?;
        Ok(Individual { name, concept })
    }

    fn maplet(&mut self) -> Result<Maplet, SyntaxError> {
        self.c.expect_keyword("maplet")?;
        let owner = self.name()?;
        self.colon()?;
        let antecedent = self.name()?;
        self.c.expect_op("|->")?;
        let image = self.c.formula()?;
        Ok(Maplet {
            owner,
            antecedent,
            image,
        })
    }

    fn predicate(&mut self) -> Result<Predicate, SyntaxError> {
        let id = self.name()?;
        self.colon()?;
        let start = self.c.position();
        if let Ok(horn) = self.horn() {
            return Ok(Predicate {
                id,
                body: PredicateBody::Horn(horn),
            });
        }
        self.c.rewind(start);
        Ok(Predicate::plain(id, self.c.formula()?))
    }

    fn horn(&mut self) -> Result<HornClause, SyntaxError> {
        let head = self.atoms()?;
        self.c.expect_op("<-")?;
        let body = self.atoms()?;
        Ok(HornClause { head, body })
    }

    fn atoms(&mut self) -> Result<Vec<Atom>, SyntaxError> {
        let mut out = vec![self.atom()?];
        while self.c.eat_op("&") {
            out.push(self.atom()?);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<Atom, SyntaxError> {
        let symbol = self.c.expect_ident()?;
        self.c.expect(&Token::LParen)?;
        let mut args = vec![self.term()?];
        while self.c.eat(&Token::Comma) {
            args.push(self.term()?);
        }
        self.c.expect(&Token::RParen)?;
        Ok(Atom { symbol, args })
    }

    fn term(&mut self) -> Result<Term, SyntaxError> {
        let t = match self.c.peek() {
            Token::Var(v) => Term::Var(v.clone()),
            Token::Str(s) => Term::Str(s.clone()),
            Token::Ident(n) => Term::Name(n.clone()),
            _ => return Err(self.c.unexpected("term")),
        };
        self.c.next();
        Ok(t)
    }
}
