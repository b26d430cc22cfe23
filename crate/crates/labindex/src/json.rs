//! JSON encodings of certificates and reports.
//!
//! Integers that fit in `i64` are written as JSON numbers and larger ones
//! as decimal strings.

use std::time::Duration;

use labindex_core::bounds::{BoundReport, BoundSide};
use labindex_core::cayley::EmbeddingCertificate;
use labindex_core::constructions::{Claim, ConstructionResult};
use labindex_core::solver::{IndexCertificate, IndexValue, Method};
use labindex_core::{induced_labels, Graph, IndexKind, VertexLabeling};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use crate::formats::emit_graph6;

pub fn int(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::String(x.to_string()),
    }
}

pub fn labeling(f: &VertexLabeling) -> Value {
    Value::Array(f.values().iter().map(int).collect())
}

pub fn graph(g: &Graph) -> Value {
    json!({ "n": g.n(), "edges": g.edges().len(), "graph6": emit_graph6(g) })
}

pub fn bounds(b: &BoundReport) -> Value {
    let breakdown: Vec<Value> = b
        .breakdown
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "side": match e.side { BoundSide::Lower => "lower", BoundSide::Upper => "upper" },
                "value": e.value,
                "reason": e.anchor,
            })
        })
        .collect();
    json!({ "lower": b.lower, "upper": b.upper, "breakdown": breakdown })
}

fn per_edge(g: &Graph, f: &VertexLabeling, kind: IndexKind) -> (Value, Value, usize) {
    let s = induced_labels(g, f, kind).expect("labeling sized to graph");
    let edges = g.edges().iter().zip(&s.per_edge).map(|(&(u, v), l)| json!([u, v, int(l)])).collect();
    let labels = s.labels.iter().map(int).collect();
    (Value::Array(edges), Value::Array(labels), s.count)
}

fn value_fields(m: &mut Map<String, Value>, v: IndexValue) {
    match v {
        IndexValue::Exact(x) => {
            m.insert("value".into(), json!(x));
        }
        IndexValue::Interval { lower, upper } => {
            m.insert("interval".into(), json!({ "lower": lower, "upper": upper }));
        }
    }
}

pub fn certificate(g: &Graph, c: &IndexCertificate, elapsed: Duration) -> Value {
    let (edges, labels, count) = per_edge(g, &c.labeling, c.kind);
    let mut m = Map::new();
    m.insert("kind".into(), json!(c.kind.as_str()));
    value_fields(&mut m, c.value);
    m.insert("method".into(), json!(c.method.as_str()));
    m.insert("graph".into(), graph(g));
    m.insert("labeling".into(), labeling(&c.labeling));
    m.insert("per_edge".into(), edges);
    m.insert("labels".into(), labels);
    m.insert("count".into(), json!(count));
    m.insert("bounds".into(), bounds(&c.bounds));
    m.insert("budget".into(), json!({ "nodes": c.nodes, "millis": elapsed.as_millis() as u64 }));
    m.insert("exhausted".into(), json!(c.exhausted));
    Value::Object(m)
}

pub fn construction(r: &ConstructionResult, b: &BoundReport) -> Value {
    let (edges, labels, count) = per_edge(&r.graph, &r.labeling, r.kind);
    let mut m = Map::new();
    m.insert("kind".into(), json!(r.kind.as_str()));
    value_fields(
        &mut m,
        match r.claim {
            Claim::Exact => IndexValue::Exact(r.claimed),
            Claim::AtMost => IndexValue::Interval { lower: b.lower, upper: r.claimed },
        },
    );
    m.insert("method".into(), json!(Method::Construction.as_str()));
    m.insert("statement".into(), json!(r.statement));
    if let Some(f) = &r.family {
        m.insert("family".into(), json!(f.to_string()));
    }
    if r.sides_swapped {
        m.insert("sides_swapped".into(), json!(true));
    }
    m.insert("graph".into(), graph(&r.graph));
    m.insert("labeling".into(), labeling(&r.labeling));
    m.insert("per_edge".into(), edges);
    m.insert("labels".into(), labels);
    m.insert("count".into(), json!(count));
    m.insert("bounds".into(), bounds(b));
    m.insert("budget".into(), json!({ "nodes": 0, "millis": 0 }));
    m.insert("exhausted".into(), json!(false));
    Value::Object(m)
}

pub fn embedding(c: &EmbeddingCertificate) -> Value {
    let map: Vec<Value> = c
        .vertex_map
        .iter()
        .map(|v| {
            let mut o = json!({ "coordinates": v });
            if c.target == labindex_core::cayley::Target::Hyperdiamond {
                let parity = if v.iter().sum::<i64>() == 0 { 1 } else { -1 };
                o["parity"] = json!(parity);
            }
            o
        })
        .collect();
    json!({
        "target": c.target.as_str(),
        "k": c.k,
        "root": c.root,
        "vertex_map": map,
        "source_labeling": labeling(&c.source_labeling),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_integers_become_strings() {
        assert_eq!(int(&BigInt::from(-5)), json!(-5));
        let big = BigInt::from(i64::MAX) * 4;
        assert_eq!(int(&big), json!(big.to_string()));
    }
}
