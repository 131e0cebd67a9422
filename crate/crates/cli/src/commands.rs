use std::io::Write;

use serde_json::{json, Map, Value};
use spreadability::coefficients::{goldberg, goldberg3, weisner, weisner3};
use spreadability::freelie::{CbhRoute, NCPoly, Word, DEFAULT_DEGREE_CAP};
use spreadability::partitions::{collect, enumerate as stream, parse_partition, OrderedSetPartition, PartitionClass};
use spreadability::rational::{self, Rational};
use spreadability::systems::{
    clt_moment, default_vars, formal_moment_expansion, free_to_moments, CumulantTable, Engine,
};
use spreadability::{Execution, SymPolynomial, Symbol};

use crate::output::{Document, Format};
use crate::{check_cap, CliError, Direction, Kind};

pub const CUMULANT_CAP: usize = 5;
pub const CLT_CAP: usize = 10;
pub const LETTER_CAP: usize = 4;

fn enumerate_cap(class: PartitionClass) -> usize {
    match class {
        PartitionClass::All => 9,
        PartitionClass::Sp | PartitionClass::Nc | PartitionClass::Ip => 12,
        _ => 10,
    }
}

fn parse<T: std::str::FromStr<Err = spreadability::Error>>(s: &str) -> Result<T, CliError> {
    s.parse().map_err(CliError::from)
}

/// Streams the listing so large classes never sit in memory.
pub fn enumerate(
    n: usize,
    class: &str,
    count_only: bool,
    format: Format,
    force: bool,
    out: &mut impl Write,
) -> Result<(), CliError> {
    let class: PartitionClass = parse(class)?;
    check_cap("n", n, enumerate_cap(class), force)?;
    let items = stream(n, class)?;
    if count_only {
        let count = items.count();
        let doc = Document {
            json: json!({ "n": n, "class": class.name(), "count": count }),
            header: vec!["n", "class", "count"],
            rows: vec![vec![n.to_string(), class.name().to_string(), count.to_string()]],
            text: vec![count.to_string()],
        };
        doc.write(format, out)?;
        return Ok(out.flush()?);
    }
    match format {
        Format::Text => {
            for pi in items {
                writeln!(out, "{}", pi.short_string())?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["n", "class", "partition"])?;
            for pi in items {
                w.write_record([n.to_string(), class.name().to_string(), pi.short_string()])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut count = 0usize;
            writeln!(out, "{{\n  \"n\": {n},\n  \"class\": {},\n  \"partitions\": [", json!(class.name()))?;
            for pi in items {
                let sep = if count == 0 { "" } else { ",\n" };
                write!(out, "{sep}    {}", json!(pi.short_string()))?;
                count += 1;
            }
            let close = if count == 0 { "" } else { "\n" };
            writeln!(out, "{close}  ],\n  \"count\": {count}\n}}")?;
        }
    }
    Ok(out.flush()?)
}

pub fn coeff(kind: Kind, tau: &str, eta: &str, pi: Option<&str>) -> Result<Document, CliError> {
    let tau = parse_partition(tau)?;
    let eta = parse_partition(eta)?;
    let pi = pi.map(parse_partition).transpose()?;
    let mut reason = None;
    if !tau.underlying().leq(&eta.underlying())? {
        reason = Some("the set partition of tau is not below that of eta");
    } else if let Some(p) = &pi {
        if !tau.leq(p)? {
            reason = Some("tau is not below pi");
        }
    }
    let value: Rational = match (kind, &pi) {
        (Kind::Weisner, None) => weisner(&tau, &eta)?,
        (Kind::Goldberg, None) => goldberg(&tau, &eta)?,
        (Kind::Weisner, Some(p)) => weisner3(&tau, &eta, p)?,
        (Kind::Goldberg, Some(p)) => goldberg3(&tau, &eta, p)?,
    };
    let kind_name = match kind {
        Kind::Weisner => "weisner",
        Kind::Goldberg => "goldberg",
    };
    let value = rational::format(&value);
    let pi_text = pi.as_ref().map(OrderedSetPartition::short_string);
    let mut text = vec![value.clone()];
    if let Some(r) = reason {
        text.push(format!("# {r}"));
    }
    Ok(Document {
        json: json!({
            "kind": kind_name,
            "tau": tau.short_string(),
            "eta": eta.short_string(),
            "pi": pi_text,
            "value": value,
            "comparable": reason.is_none(),
            "reason": reason,
        }),
        header: vec!["kind", "tau", "eta", "pi", "value", "reason"],
        rows: vec![vec![
            kind_name.to_string(),
            tau.short_string(),
            eta.short_string(),
            pi_text.clone().unwrap_or_default(),
            value,
            reason.unwrap_or("").to_string(),
        ]],
        text,
    })
}

/// Monomial → "p/q" in display order.
fn term_map(p: &SymPolynomial) -> Vec<(String, String)> {
    if p.is_zero() {
        return vec![("1".into(), "0".into())];
    }
    p.display_terms().into_iter().map(|(m, c)| (m.to_string(), rational::format(c))).collect()
}

fn object(pairs: &[(String, String)]) -> Value {
    Value::Object(pairs.iter().map(|(k, v)| (k.clone(), Value::String(v.clone()))).collect::<Map<_, _>>())
}

pub fn cumulants(system: &str, n: usize, direction: Direction, force: bool) -> Result<Document, CliError> {
    let engine: Engine = parse(system)?;
    check_cap("n", n, CUMULANT_CAP, force)?;
    let vars = default_vars(n);
    let table = CumulantTable::build(&engine, &vars, Execution::default())?;
    let direction_name = match direction {
        Direction::M2c => "m2c",
        Direction::C2m => "c2m",
    };
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    let mut text = Vec::new();
    for pi in collect(n, PartitionClass::All)? {
        let (symbol, value) = match direction {
            Direction::M2c => {
                let k = table.get(&pi).expect("table covers OP_n");
                let k = if engine == Engine::Free { free_to_moments(k) } else { k.clone() };
                (Symbol::PartCumulant(pi.clone()), k)
            }
            Direction::C2m => {
                let keep = |s: &OrderedSetPartition| table.get(s).is_some_and(|k| !k.is_zero());
                (Symbol::PartMoment(pi.clone()), formal_moment_expansion(&pi, keep))
            }
        };
        let terms = term_map(&value);
        for (m, c) in &terms {
            rows.push(vec![
                engine.name().to_string(),
                n.to_string(),
                direction_name.to_string(),
                pi.short_string(),
                m.clone(),
                c.clone(),
            ]);
        }
        text.push(format!("{symbol} = {value}"));
        entries.push(json!({
            "partition": pi.short_string(),
            "symbol": symbol.to_string(),
            "value": value.to_string(),
            "terms": object(&terms),
        }));
    }
    Ok(Document {
        json: json!({ "system": engine.name(), "n": n, "direction": direction_name, "entries": entries }),
        header: vec!["system", "n", "direction", "partition", "monomial", "coefficient"],
        rows,
        text,
    })
}

fn series_terms(p: &NCPoly) -> Vec<(String, String)> {
    p.terms().map(|(w, c)| (w.to_string(), rational::format(c))).collect()
}

pub fn cbh(letters: &str, degree: usize, route: &str, force: bool) -> Result<Document, CliError> {
    let word: Word = parse(letters)?;
    check_cap("degree", degree, DEFAULT_DEGREE_CAP, force)?;
    check_cap("letters", word.len(), LETTER_CAP, force)?;
    let exec = Execution::default();
    let (series, agree) = if route == "all" {
        let results = CbhRoute::ALL
            .iter()
            .map(|r| r.expand(word.letters(), degree, exec))
            .collect::<Result<Vec<_>, _>>()?;
        let agree = results.windows(2).all(|w| w[0] == w[1]);
        (results.into_iter().next().expect("three routes"), Some(agree))
    } else {
        let r: CbhRoute = parse(route)?;
        (r.expand(word.letters(), degree, exec)?, None)
    };
    let terms = series_terms(&series);
    let mut json = json!({
        "letters": word.to_string(),
        "degree": degree,
        "route": route,
        "coefficients": object(&terms),
    });
    let mut text = vec![series.to_string()];
    if let Some(a) = agree {
        json["routes_agree"] = Value::Bool(a);
        text.push(format!("routes_agree: {a}"));
    }
    let rows = terms
        .iter()
        .map(|(w, c)| vec![word.to_string(), degree.to_string(), route.to_string(), w.clone(), c.clone()])
        .collect();
    Ok(Document { json, header: vec!["letters", "degree", "route", "word", "coefficient"], rows, text })
}

pub fn clt(system: &str, n: usize, force: bool) -> Result<Document, CliError> {
    let engine: Engine = parse(system)?;
    check_cap("n", n, CLT_CAP, force)?;
    let value = rational::format(&clt_moment(engine, n)?);
    Ok(Document {
        json: json!({ "system": engine.name(), "n": n, "value": value }),
        header: vec!["system", "n", "value"],
        rows: vec![vec![engine.name().to_string(), n.to_string(), value.clone()]],
        text: vec![value],
    })
}
