//! The line-oriented model document format.
//!
//! One declaration per line, `#` starts a comment:
//!
//! ```text
//! algebra <name> chain <v1> <v2> ...
//! space <name> points <p1> <p2> ...
//! set <name> on <space> over <algebra> = <point>:<value> ...
//! topology <name> on <space> [over <algebra>] = [<set>:<degree> ...]
//! map <name> : <source> -> <target> = <point>:<point> ...
//! ```
//!
//! Values are exact rationals, written as integers, `p/q` fractions, or
//! terminating decimals; the canonical serialization renders them in
//! lowest terms as integers or `p/q`. Parsing a serialized registry and
//! serializing it again is the identity.

use lftop_core::algebra::{format_rational, Algebra, Rational};
use lftop_core::fuzzy::{FuzzyMap, FuzzySet, Space};
use lftop_core::topology::FuzzyTopology;
use lftop_core::Elt;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

#[derive(Debug)]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.col, self.msg)
    }
}

impl std::error::Error for ParseError {}

/// Every declared object, by kind and name.
#[derive(Debug, Default)]
pub struct Registry {
    pub algebras: BTreeMap<String, Arc<Algebra>>,
    pub spaces: BTreeMap<String, Arc<Space>>,
    pub sets: BTreeMap<String, FuzzySet>,
    pub topologies: BTreeMap<String, FuzzyTopology>,
    pub maps: BTreeMap<String, FuzzyMap>,
    set_algebra: BTreeMap<String, String>,
    topology_algebra: BTreeMap<String, String>,
    topology_entries: BTreeMap<String, Vec<(String, String)>>,
}

struct Token<'a> {
    text: &'a str,
    col: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch == '#' {
            break;
        }
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                tokens.push(Token { text: &line[s..i], col: s + 1 });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        let end = line.find('#').unwrap_or(line.len());
        tokens.push(Token { text: line[s..end].trim_end(), col: s + 1 });
    }
    tokens
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.parse().ok()?;
        let d: i64 = d.parse().ok()?;
        if d == 0 || n < 0 {
            return None;
        }
        return Some(Rational::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let int: i64 = if int.is_empty() { 0 } else { int.parse().ok()? };
        if frac.is_empty() || frac.len() > 12 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let digits: i64 = frac.parse().ok()?;
        let scale = 10i64.pow(frac.len() as u32);
        if int < 0 {
            return None;
        }
        return Some(Rational::new(int * scale + digits, scale));
    }
    let n: i64 = s.parse().ok()?;
    if n < 0 {
        None
    } else {
        Some(Rational::from_integer(n))
    }
}

struct Parser {
    registry: Registry,
}

impl Parser {
    fn err<T>(&self, line: usize, col: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { line, col, msg: msg.into() })
    }

    fn fresh_name(&self, line: usize, tok: &Token<'_>, kind: &str) -> Result<String, ParseError> {
        let name = tok.text.to_string();
        let taken = match kind {
            "algebra" => self.registry.algebras.contains_key(&name),
            "space" => self.registry.spaces.contains_key(&name),
            "set" => self.registry.sets.contains_key(&name),
            "topology" => self.registry.topologies.contains_key(&name),
            "map" => self.registry.maps.contains_key(&name),
            _ => unreachable!(),
        };
        if taken {
            return self.err(line, tok.col, format!("duplicate {kind} name `{name}`"));
        }
        Ok(name)
    }

    fn expect<'b>(
        &self,
        line: usize,
        tokens: &'b [Token<'b>],
        idx: usize,
        what: &str,
    ) -> Result<&'b Token<'b>, ParseError> {
        tokens.get(idx).ok_or(ParseError {
            line,
            col: tokens.last().map(|t| t.col + t.text.len()).unwrap_or(1),
            msg: format!("expected {what}"),
        })
    }

    fn keyword(
        &self,
        line: usize,
        tokens: &[Token<'_>],
        idx: usize,
        word: &str,
    ) -> Result<(), ParseError> {
        let t = self.expect(line, tokens, idx, &format!("`{word}`"))?;
        if t.text != word {
            return self.err(line, t.col, format!("expected `{word}`, found `{}`", t.text));
        }
        Ok(())
    }

    fn value_in(
        &self,
        line: usize,
        tok: &Token<'_>,
        alg: &Arc<Algebra>,
        text: &str,
    ) -> Result<Elt, ParseError> {
        let r = match parse_rational(text) {
            Some(r) => r,
            None => return self.err(line, tok.col, format!("`{text}` is not a rational value")),
        };
        match alg.find_rational(r) {
            Some(e) => Ok(e),
            None => self.err(
                line,
                tok.col,
                format!("value {} is not an element of the algebra", format_rational(r)),
            ),
        }
    }

    fn parse_line(&mut self, lineno: usize, raw: &str) -> Result<(), ParseError> {
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            return Ok(());
        }
        match tokens[0].text {
            "algebra" => self.parse_algebra(lineno, &tokens),
            "space" => self.parse_space(lineno, &tokens),
            "set" => self.parse_set(lineno, &tokens),
            "topology" => self.parse_topology(lineno, &tokens),
            "map" => self.parse_map(lineno, &tokens),
            other => self.err(lineno, tokens[0].col, format!("unknown declaration `{other}`")),
        }
    }

    fn parse_algebra(&mut self, line: usize, tokens: &[Token<'_>]) -> Result<(), ParseError> {
        let name = self.fresh_name(line, self.expect(line, tokens, 1, "algebra name")?, "algebra")?;
        let kind = self.expect(line, tokens, 2, "`chain`")?;
        if kind.text != "chain" {
            return self.err(line, kind.col, format!("unknown algebra kind `{}`", kind.text));
        }
        let mut values = Vec::new();
        for tok in &tokens[3..] {
            match parse_rational(tok.text) {
                Some(r) if r <= Rational::from_integer(1) => values.push(r),
                Some(r) => {
                    return self.err(
                        line,
                        tok.col,
                        format!("chain value {} is outside [0, 1]", format_rational(r)),
                    )
                }
                None => {
                    return self.err(line, tok.col, format!("`{}` is not a rational value", tok.text))
                }
            }
        }
        self.registry.algebras.insert(name, Algebra::chain(values));
        Ok(())
    }

    fn parse_space(&mut self, line: usize, tokens: &[Token<'_>]) -> Result<(), ParseError> {
        let name = self.fresh_name(line, self.expect(line, tokens, 1, "space name")?, "space")?;
        self.keyword(line, tokens, 2, "points")?;
        let mut points = Vec::new();
        for tok in &tokens[3..] {
            if points.contains(&tok.text.to_string()) {
                return self.err(line, tok.col, format!("duplicate point `{}`", tok.text));
            }
            points.push(tok.text.to_string());
        }
        if points.is_empty() {
            return self.err(line, tokens[2].col, "a space needs at least one point");
        }
        self.registry.spaces.insert(name.clone(), Space::new(name, points));
        Ok(())
    }

    fn parse_set(&mut self, line: usize, tokens: &[Token<'_>]) -> Result<(), ParseError> {
        let name = self.fresh_name(line, self.expect(line, tokens, 1, "set name")?, "set")?;
        self.keyword(line, tokens, 2, "on")?;
        let space_tok = self.expect(line, tokens, 3, "space name")?;
        let space = match self.registry.spaces.get(space_tok.text) {
            Some(s) => s.clone(),
            None => return self.err(line, space_tok.col, format!("unknown space `{}`", space_tok.text)),
        };
        self.keyword(line, tokens, 4, "over")?;
        let alg_tok = self.expect(line, tokens, 5, "algebra name")?;
        let alg = match self.registry.algebras.get(alg_tok.text) {
            Some(a) => a.clone(),
            None => return self.err(line, alg_tok.col, format!("unknown algebra `{}`", alg_tok.text)),
        };
        self.keyword(line, tokens, 6, "=")?;
        let mut grades: Vec<Option<Elt>> = vec![None; space.len()];
        for tok in &tokens[7..] {
            let Some((point, value)) = tok.text.split_once(':') else {
                return self.err(line, tok.col, format!("expected `point:value`, found `{}`", tok.text));
            };
            let Some(idx) = space.index_of(point) else {
                return self.err(line, tok.col, format!("unknown point `{point}`"));
            };
            if grades[idx].is_some() {
                return self.err(line, tok.col, format!("point `{point}` assigned twice"));
            }
            grades[idx] = Some(self.value_in(line, tok, &alg, value)?);
        }
        if let Some(missing) = grades.iter().position(Option::is_none) {
            return self.err(
                line,
                tokens[0].col,
                format!("membership must cover every point; `{}` is missing", space.point(missing)),
            );
        }
        let grades = grades.into_iter().map(Option::unwrap).collect();
        self.registry
            .sets
            .insert(name.clone(), FuzzySet::from_grades(space, alg, grades));
        self.registry.set_algebra.insert(name, alg_tok.text.to_string());
        Ok(())
    }

    fn parse_topology(&mut self, line: usize, tokens: &[Token<'_>]) -> Result<(), ParseError> {
        let name =
            self.fresh_name(line, self.expect(line, tokens, 1, "topology name")?, "topology")?;
        self.keyword(line, tokens, 2, "on")?;
        let space_tok = self.expect(line, tokens, 3, "space name")?;
        let space = match self.registry.spaces.get(space_tok.text) {
            Some(s) => s.clone(),
            None => return self.err(line, space_tok.col, format!("unknown space `{}`", space_tok.text)),
        };
        // Optional `over <algebra>`, needed when the table is empty.
        let mut idx = 4;
        let mut declared_algebra: Option<(String, Arc<Algebra>)> = None;
        if tokens.get(idx).map(|t| t.text) == Some("over") {
            let alg_tok = self.expect(line, tokens, idx + 1, "algebra name")?;
            match self.registry.algebras.get(alg_tok.text) {
                Some(a) => declared_algebra = Some((alg_tok.text.to_string(), a.clone())),
                None => {
                    return self.err(line, alg_tok.col, format!("unknown algebra `{}`", alg_tok.text))
                }
            }
            idx += 2;
        }
        self.keyword(line, tokens, idx, "=")?;

        let mut algebra = declared_algebra;
        let mut entries: Vec<(FuzzySet, Elt)> = Vec::new();
        let mut named: Vec<(String, String)> = Vec::new();
        for tok in &tokens[idx + 1..] {
            let Some((set_name, degree)) = tok.text.split_once(':') else {
                return self.err(line, tok.col, format!("expected `set:degree`, found `{}`", tok.text));
            };
            let Some(set) = self.registry.sets.get(set_name) else {
                return self.err(line, tok.col, format!("unknown set `{set_name}`"));
            };
            if set.space().name() != space.name() {
                return self.err(
                    line,
                    tok.col,
                    format!("set `{set_name}` lives on space `{}`", set.space().name()),
                );
            }
            let set_alg_name = self.registry.set_algebra[set_name].clone();
            match &algebra {
                None => algebra = Some((set_alg_name, set.algebra().clone())),
                Some((existing, _)) if *existing != set_alg_name => {
                    return self.err(
                        line,
                        tok.col,
                        format!("set `{set_name}` is over algebra `{set_alg_name}`, expected `{existing}`"),
                    )
                }
                Some(_) => {}
            }
            let alg = algebra.as_ref().unwrap().1.clone();
            let d = self.value_in(line, tok, &alg, degree)?;
            if entries.iter().any(|(s, _)| s == set) {
                return self.err(line, tok.col, format!("set `{set_name}` listed twice"));
            }
            entries.push((set.clone(), d));
            named.push((set_name.to_string(), alg.display(d)));
        }
        let Some((alg_name, alg)) = algebra else {
            return self.err(
                line,
                tokens[0].col,
                "an empty topology needs an explicit `over <algebra>` clause",
            );
        };
        named.sort();
        self.registry
            .topologies
            .insert(name.clone(), FuzzyTopology::new(space, alg, entries));
        self.registry.topology_algebra.insert(name.clone(), alg_name);
        self.registry.topology_entries.insert(name, named);
        Ok(())
    }

    fn parse_map(&mut self, line: usize, tokens: &[Token<'_>]) -> Result<(), ParseError> {
        let name = self.fresh_name(line, self.expect(line, tokens, 1, "map name")?, "map")?;
        self.keyword(line, tokens, 2, ":")?;
        let src_tok = self.expect(line, tokens, 3, "source space")?;
        let source = match self.registry.spaces.get(src_tok.text) {
            Some(s) => s.clone(),
            None => return self.err(line, src_tok.col, format!("unknown space `{}`", src_tok.text)),
        };
        self.keyword(line, tokens, 4, "->")?;
        let tgt_tok = self.expect(line, tokens, 5, "target space")?;
        let target = match self.registry.spaces.get(tgt_tok.text) {
            Some(s) => s.clone(),
            None => return self.err(line, tgt_tok.col, format!("unknown space `{}`", tgt_tok.text)),
        };
        self.keyword(line, tokens, 6, "=")?;
        let mut assignment: Vec<Option<usize>> = vec![None; source.len()];
        for tok in &tokens[7..] {
            let Some((from, to)) = tok.text.split_once(':') else {
                return self.err(line, tok.col, format!("expected `point:point`, found `{}`", tok.text));
            };
            let Some(x) = source.index_of(from) else {
                return self.err(line, tok.col, format!("unknown source point `{from}`"));
            };
            let Some(y) = target.index_of(to) else {
                return self.err(line, tok.col, format!("unknown target point `{to}`"));
            };
            if assignment[x].is_some() {
                return self.err(line, tok.col, format!("point `{from}` assigned twice"));
            }
            assignment[x] = Some(y);
        }
        if let Some(missing) = assignment.iter().position(Option::is_none) {
            return self.err(
                line,
                tokens[0].col,
                format!("map must be total; `{}` is unassigned", source.point(missing)),
            );
        }
        let assignment = assignment.into_iter().map(Option::unwrap).collect();
        self.registry.maps.insert(name, FuzzyMap::new(source, target, assignment));
        Ok(())
    }
}

pub fn parse(text: &str) -> Result<Registry, ParseError> {
    let mut parser = Parser { registry: Registry::default() };
    for (i, line) in text.lines().enumerate() {
        parser.parse_line(i + 1, line)?;
    }
    Ok(parser.registry)
}

impl Registry {
    /// Rebuild a registry from a model so it can be serialized as a
    /// loadable document. Only chain algebras fit the document grammar;
    /// models over other algebras return `None`.
    pub fn from_model(m: &lftop_core::harness::model::Model) -> Option<Registry> {
        if !m.algebra.is_chain() {
            return None;
        }
        let mut reg = Registry::default();
        reg.algebras.insert("L".into(), m.algebra.clone());
        reg.spaces.insert(m.t1.space().name().into(), m.t1.space().clone());
        reg.spaces.insert(m.t2.space().name().into(), m.t2.space().clone());
        let mut add_topology = |name: &str, top: &FuzzyTopology, prefix: &str| {
            let mut entries = Vec::new();
            for (i, (set, d)) in top.table().iter().enumerate() {
                let set_name = format!("{prefix}{}", i + 1);
                reg.sets.insert(set_name.clone(), set.clone());
                reg.set_algebra.insert(set_name.clone(), "L".into());
                entries.push((set_name, top.algebra().display(*d)));
            }
            entries.sort();
            reg.topologies.insert(name.into(), top.clone());
            reg.topology_algebra.insert(name.into(), "L".into());
            reg.topology_entries.insert(name.into(), entries);
        };
        add_topology("T1", &m.t1, "A");
        add_topology("T2", &m.t2, "B");
        reg.maps.insert("f".into(), m.map.clone());
        Some(reg)
    }

    /// Canonical document: declarations grouped by kind, names sorted,
    /// values in lowest terms. Parsing the output reproduces the registry.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for (name, alg) in &self.algebras {
            out.push_str(&format!("algebra {name} chain"));
            for e in alg.elements() {
                out.push_str(&format!(" {}", alg.display(e)));
            }
            out.push('\n');
        }
        for (name, space) in &self.spaces {
            out.push_str(&format!("space {name} points"));
            for p in space.points() {
                out.push_str(&format!(" {p}"));
            }
            out.push('\n');
        }
        for (name, set) in &self.sets {
            out.push_str(&format!(
                "set {name} on {} over {} =",
                set.space().name(),
                self.set_algebra[name]
            ));
            for (i, p) in set.space().points().enumerate() {
                out.push_str(&format!(" {p}:{}", set.algebra().display(set.grade(i))));
            }
            out.push('\n');
        }
        for (name, top) in &self.topologies {
            out.push_str(&format!(
                "topology {name} on {} over {} =",
                top.space().name(),
                self.topology_algebra[name]
            ));
            for (set_name, degree) in &self.topology_entries[name] {
                out.push_str(&format!(" {set_name}:{degree}"));
            }
            out.push('\n');
        }
        for (name, map) in &self.maps {
            out.push_str(&format!(
                "map {name} : {} -> {} =",
                map.source().name(),
                map.target().name()
            ));
            for (x, p) in map.source().points().enumerate() {
                out.push_str(&format!(" {p}:{}", map.target().point(map.apply(x))));
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_document_gives_an_empty_registry() {
        let registry = parse("\n# just a comment\n").unwrap();
        assert!(registry.algebras.is_empty());
        assert!(registry.sets.is_empty());
    }

    #[test]
    fn rationals_parse_in_all_three_forms() {
        assert_eq!(parse_rational("1/2"), Some(Rational::new(1, 2)));
        assert_eq!(parse_rational("0.25"), Some(Rational::new(1, 4)));
        assert_eq!(parse_rational("1"), Some(Rational::from_integer(1)));
        assert_eq!(parse_rational("-1/2"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn unknown_names_error_with_position() {
        let err = parse("algebra L chain 1/2\nspace X points a b\nset U on X over M = a:1 b:0\n")
            .unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.msg.contains("unknown algebra `M`"));
        let err = parse("topology T on X = ").unwrap_err();
        assert!(err.msg.contains("unknown space `X`"));
    }

    #[test]
    fn values_must_live_in_the_algebra() {
        let err = parse("algebra L chain 1/2\nspace X points a\nset U on X over L = a:1/3\n")
            .unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.msg.contains("not an element"));
    }

    #[test]
    fn sets_must_be_total() {
        let err =
            parse("algebra L chain\nspace X points a b\nset U on X over L = a:1\n").unwrap_err();
        assert!(err.msg.contains("`b` is missing"));
    }

    #[test]
    fn empty_topologies_need_an_algebra() {
        parse("algebra L chain\nspace X points a\ntopology T on X over L =\n").unwrap();
        let err = parse("algebra L chain\nspace X points a\ntopology T on X =\n").unwrap_err();
        assert!(err.msg.contains("`over <algebra>`"));
    }

    #[test]
    fn round_trip_is_identity_on_the_canonical_form() {
        let doc = "\
algebra L chain 0 1/5 3/10 1/2 7/10 4/5 1
space X points a b c
space Y points x y z
set U on X over L = a:1/2 b:3/10 c:1/5
set V on Y over L = x:7/10 y:1 z:4/5
topology T1 on X = U:1/2
topology T2 on Y = V:3/10
map f : X -> Y = a:z b:x c:y
";
        let registry = parse(doc).unwrap();
        let canon = registry.serialize();
        let reparsed = parse(&canon).unwrap();
        assert_eq!(canon, reparsed.serialize());
        assert_eq!(registry.topologies["T1"], reparsed.topologies["T1"]);
        assert_eq!(registry.maps["f"], reparsed.maps["f"]);
    }
}
