//! JSON encoding of property values and string objects.
//!
//! Fields holding their default (`false`, empty list) are omitted. A length
//! or unary interval carries `lo` iff its non-empty range exists, with
//! `"hi": null` for +∞. Decoding is exact: it never reduces.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::config::{ConfigError, PropertyConfig};
use crate::morphism::StandardMorphism;
use crate::object::{Ctx, StringObject};
use crate::property::{LowerBound, PropValue, UnaryInterval};
use crate::word::{antichain_insert, show, word, Alphabet, Word};

#[derive(Debug, Error, PartialEq, Eq)]
#[error("{path}: {msg}")]
pub struct DecodeError {
    pub path: String,
    pub msg: String,
}

fn err(path: &str, msg: impl Into<String>) -> DecodeError {
    DecodeError { path: path.to_string(), msg: msg.into() }
}

pub fn interval_to_json(u: &UnaryInterval) -> Value {
    let mut m = Map::new();
    if u.eps {
        m.insert("eps".into(), Value::Bool(true));
    }
    if let Some((lo, hi)) = u.range {
        m.insert("lo".into(), json!(lo));
        m.insert("hi".into(), hi.map_or(Value::Null, |h| json!(h)));
    }
    Value::Object(m)
}

pub fn bound_to_json(eps: bool, b: &LowerBound) -> Value {
    let mut m = Map::new();
    if eps {
        m.insert("eps".into(), Value::Bool(true));
    }
    if b.is_bottom {
        m.insert("bottom".into(), Value::Bool(true));
        return Value::Object(m);
    }
    if let Some(c) = &b.constant {
        m.insert("const".into(), Value::String(show(c)));
        return Value::Object(m);
    }
    if let Some(p) = &b.prefix {
        m.insert("prefix".into(), Value::String(show(p)));
    }
    if let Some(s) = &b.suffix {
        m.insert("suffix".into(), Value::String(show(s)));
    }
    let rest: Vec<Value> = b
        .factors
        .iter()
        .filter(|f| Some(*f) != b.prefix.as_ref() && Some(*f) != b.suffix.as_ref())
        .map(|f| Value::String(show(f)))
        .collect();
    if !rest.is_empty() {
        m.insert("factors".into(), Value::Array(rest));
    }
    Value::Object(m)
}

pub fn prop_to_json(v: &PropValue) -> Value {
    match v {
        PropValue::NonUnary { eps, bound } => bound_to_json(*eps, bound),
        PropValue::Unary(u) => interval_to_json(u),
    }
}

pub fn morphism_to_json(m: &StandardMorphism, sigma: &Alphabet) -> Value {
    let (classes, erase) = m.partition(sigma);
    json!({
        "classes": classes.iter().map(|c| c.iter().collect::<String>()).collect::<Vec<_>>(),
        "erase": erase.iter().collect::<String>(),
    })
}

pub fn object_to_json(o: &StringObject, sigma: &Alphabet) -> Value {
    if o.is_bottom {
        return json!({ "bottom": true });
    }
    let mut m = Map::new();
    m.insert("value".into(), prop_to_json(&o.value));
    m.insert("length".into(), interval_to_json(&o.length));
    if !o.customs.is_empty() {
        let customs = o
            .customs
            .iter()
            .map(|(k, v)| json!({ "morphism": morphism_to_json(k, sigma), "prop": prop_to_json(v) }))
            .collect();
        m.insert("customs".into(), Value::Array(customs));
    }
    Value::Object(m)
}

fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, DecodeError> {
    v.as_object().ok_or_else(|| err(path, "expected an object"))
}

fn check_keys(m: &Map<String, Value>, allowed: &[&str], path: &str) -> Result<(), DecodeError> {
    match m.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(err(&format!("{path}.{k}"), "unknown field")),
        None => Ok(()),
    }
}

fn flag(m: &Map<String, Value>, key: &str, path: &str) -> Result<bool, DecodeError> {
    match m.get(key) {
        None => Ok(false),
        Some(Value::Bool(b)) => Ok(*b),
        Some(_) => Err(err(&format!("{path}.{key}"), "expected a boolean")),
    }
}

fn string(m: &Map<String, Value>, key: &str, path: &str) -> Result<Option<Word>, DecodeError> {
    match m.get(key) {
        None => Ok(None),
        Some(Value::String(s)) => Ok(Some(word(s))),
        Some(_) => Err(err(&format!("{path}.{key}"), "expected a string")),
    }
}

fn natural(v: &Value, path: &str) -> Result<usize, DecodeError> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| err(path, "expected a natural number"))
}

pub fn interval_from_json(v: &Value, path: &str) -> Result<UnaryInterval, DecodeError> {
    let m = object(v, path)?;
    check_keys(m, &["eps", "lo", "hi"], path)?;
    let eps = flag(m, "eps", path)?;
    let range = match (m.get("lo"), m.get("hi")) {
        (None, None) => None,
        (None, Some(_)) => return Err(err(&format!("{path}.hi"), "\"hi\" requires \"lo\"")),
        (Some(lo), hi) => {
            let lo = natural(lo, &format!("{path}.lo"))?;
            let hi = match hi {
                None | Some(Value::Null) => None,
                Some(h) => Some(natural(h, &format!("{path}.hi"))?),
            };
            if lo == 0 || hi.is_some_and(|h| h <= lo) {
                return Err(err(path, "range must satisfy 1 <= lo < hi"));
            }
            Some((lo, hi))
        }
    };
    Ok(UnaryInterval { eps, range })
}

pub fn bound_from_json(v: &Value, path: &str) -> Result<(bool, LowerBound), DecodeError> {
    let m = object(v, path)?;
    check_keys(m, &["eps", "bottom", "const", "prefix", "suffix", "factors"], path)?;
    let eps = flag(m, "eps", path)?;
    if flag(m, "bottom", path)? {
        return Ok((eps, LowerBound::bottom()));
    }
    let nonempty = |w: Option<Word>, key: &str| match w {
        Some(w) if w.is_empty() => Err(err(&format!("{path}.{key}"), "must not be empty")),
        w => Ok(w),
    };
    let constant = nonempty(string(m, "const", path)?, "const")?;
    let prefix = nonempty(string(m, "prefix", path)?, "prefix")?;
    let suffix = nonempty(string(m, "suffix", path)?, "suffix")?;
    let mut factors = Default::default();
    if let Some(fs) = m.get("factors") {
        let fs = fs.as_array().ok_or_else(|| err(&format!("{path}.factors"), "expected an array"))?;
        for (i, f) in fs.iter().enumerate() {
            let fpath = format!("{path}.factors[{i}]");
            match f.as_str() {
                Some("") => return Err(err(&fpath, "must not be empty")),
                Some(s) => antichain_insert(&mut factors, word(s)),
                None => return Err(err(&fpath, "expected a string")),
            }
        }
    }
    let b = LowerBound { is_bottom: false, constant, prefix, suffix, factors };
    if b.constant.is_some() && (b.prefix.is_some() || b.suffix.is_some() || !b.factors.is_empty()) {
        return Err(err(path, "\"const\" excludes other equations"));
    }
    Ok((eps, b.basic_reduce()))
}

pub fn prop_from_json(v: &Value, unary: bool, path: &str) -> Result<PropValue, DecodeError> {
    if unary {
        Ok(PropValue::Unary(interval_from_json(v, path)?))
    } else {
        let (eps, bound) = bound_from_json(v, path)?;
        Ok(PropValue::NonUnary { eps, bound })
    }
}

pub fn morphism_from_json(v: &Value, path: &str) -> Result<StandardMorphism, DecodeError> {
    let m = object(v, path)?;
    check_keys(m, &["classes", "erase"], path)?;
    let classes = match m.get("classes") {
        None => Vec::new(),
        Some(Value::Array(cs)) => cs
            .iter()
            .enumerate()
            .map(|(i, c)| c.as_str().map(str::to_string).ok_or_else(|| err(&format!("{path}.classes[{i}]"), "expected a string")))
            .collect::<Result<_, _>>()?,
        Some(_) => return Err(err(&format!("{path}.classes"), "expected an array")),
    };
    let erase = string(m, "erase", path)?.unwrap_or_default();
    StandardMorphism::from_classes(&classes, &show(&erase)).map_err(|e| err(path, e.to_string()))
}

pub fn object_from_json(v: &Value, sigma: &Alphabet, path: &str) -> Result<StringObject, DecodeError> {
    let m = object(v, path)?;
    check_keys(m, &["bottom", "value", "length", "customs"], path)?;
    if flag(m, "bottom", path)? {
        return Ok(StringObject::bottom());
    }
    let top = StringObject::top();
    let value = match m.get("value") {
        Some(v) => prop_from_json(v, false, &format!("{path}.value"))?,
        None => top.value,
    };
    let length = match m.get("length") {
        Some(v) => interval_from_json(v, &format!("{path}.length"))?,
        None => top.length,
    };
    let mut customs = BTreeMap::new();
    if let Some(cs) = m.get("customs") {
        let cs = cs.as_array().ok_or_else(|| err(&format!("{path}.customs"), "expected an array"))?;
        for (i, c) in cs.iter().enumerate() {
            let cpath = format!("{path}.customs[{i}]");
            let cm = object(c, &cpath)?;
            check_keys(cm, &["morphism", "prop"], &cpath)?;
            let mv = cm.get("morphism").ok_or_else(|| err(&cpath, "missing \"morphism\""))?;
            let k = morphism_from_json(mv, &format!("{cpath}.morphism"))?;
            let pv = cm.get("prop").ok_or_else(|| err(&cpath, "missing \"prop\""))?;
            let prop = prop_from_json(pv, k.is_unary(sigma), &format!("{cpath}.prop"))?;
            if customs.insert(k, prop).is_some() {
                return Err(err(&cpath, "duplicate morphism"));
            }
        }
    }
    Ok(StringObject { is_bottom: false, value, length, customs })
}

/// Letters of every string in `v`, keys excluded.
pub fn letters_in(v: &Value) -> BTreeSet<char> {
    let mut out = BTreeSet::new();
    fn walk(v: &Value, out: &mut BTreeSet<char>) {
        match v {
            Value::String(s) => out.extend(s.chars()),
            Value::Array(xs) => xs.iter().for_each(|x| walk(x, out)),
            Value::Object(m) => m.values().for_each(|x| walk(x, out)),
            _ => {}
        }
    }
    walk(v, &mut out);
    out
}

/// An object together with the session it lives in:
/// `{"alphabet": "..", "properties": [..], "object": OBJECT}`.
#[derive(Clone, Debug)]
pub struct ObjectDoc {
    pub alphabet: Option<Alphabet>,
    pub config: PropertyConfig,
    pub object: Value,
}

#[derive(Debug, Error)]
pub enum DocError {
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("letter {0:?} is used but missing from the declared alphabet")]
    MissingLetter(char),
    #[error("documents declare different alphabets")]
    AlphabetMismatch,
}

impl ObjectDoc {
    pub fn from_value(v: &Value) -> Result<Self, DocError> {
        let m = object(v, "$")?;
        check_keys(m, &["alphabet", "properties", "object"], "$")?;
        let alphabet = match m.get("alphabet") {
            None => None,
            Some(Value::String(s)) if !s.is_empty() => Some(Alphabet::from_str(s)),
            Some(_) => return Err(err("$.alphabet", "expected a non-empty string").into()),
        };
        let mut cfg_doc = Map::new();
        if let Some(p) = m.get("properties") {
            cfg_doc.insert("properties".into(), p.clone());
        }
        let config = PropertyConfig::from_value(&Value::Object(cfg_doc))?;
        let object = m.get("object").cloned().ok_or_else(|| err("$", "missing \"object\""))?;
        Ok(ObjectDoc { alphabet, config, object })
    }

    fn used_letters(&self) -> BTreeSet<char> {
        let mut used = letters_in(&self.object);
        used.extend(self.config.letters());
        used
    }
}

/// Shared session for `docs` and their decoded objects. Without a declared
/// alphabet, the used letters plus one fresh letter are taken.
pub fn decode_docs(docs: &[ObjectDoc]) -> Result<(Ctx, Vec<StringObject>), DocError> {
    let mut declared: Option<&Alphabet> = None;
    for d in docs {
        if let Some(a) = &d.alphabet {
            if declared.is_some_and(|b| b != a) {
                return Err(DocError::AlphabetMismatch);
            }
            declared = Some(a);
        }
    }
    let used: BTreeSet<char> = docs.iter().flat_map(ObjectDoc::used_letters).collect();
    let sigma = match declared {
        Some(a) => {
            if let Some(c) = used.iter().find(|&&c| !a.contains(c)) {
                return Err(DocError::MissingLetter(*c));
            }
            a.clone()
        }
        None => {
            let fresh = ('a'..='z').chain('A'..='Z').chain('0'..='9').find(|c| !used.contains(c));
            Alphabet::new(used.iter().copied().chain(fresh))
        }
    };
    let mut props = Vec::new();
    for d in docs {
        props.extend(d.config.morphisms(&sigma)?.into_iter().map(|(_, m)| m));
    }
    let ctx = Ctx::new(sigma, props);
    let objects = docs
        .iter()
        .map(|d| object_from_json(&d.object, &ctx.sigma, "$.object"))
        .collect::<Result<_, _>>()?;
    Ok((ctx, objects))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops;

    #[test]
    fn constant_object() {
        let ctx = Ctx::new(Alphabet::from_str("ab"), vec![]);
        let o = StringObject::atom(&word("ab"), &ctx);
        let v = object_to_json(&o, &ctx.sigma);
        assert_eq!(v.to_string(), r#"{"length":{"hi":3,"lo":2},"value":{"const":"ab"}}"#);
        assert_eq!(object_from_json(&v, &ctx.sigma, "$").unwrap(), o);
    }

    #[test]
    fn bottom_object() {
        let sigma = Alphabet::from_str("ab");
        assert_eq!(object_to_json(&StringObject::bottom(), &sigma).to_string(), r#"{"bottom":true}"#);
    }

    #[test]
    fn split_length() {
        let u = UnaryInterval::new(true, 5, None);
        let v = interval_to_json(&u);
        assert_eq!(v.to_string(), r#"{"eps":true,"hi":null,"lo":5}"#);
        assert_eq!(interval_from_json(&v, "$").unwrap(), u);
        assert_eq!(interval_from_json(&json!({"eps": true}), "$").unwrap(), UnaryInterval::EPS);
    }

    #[test]
    fn customs_round_trip() {
        let sigma = Alphabet::from_str("<>abc");
        let tags = StandardMorphism::from_classes(["<", ">"], "abc").unwrap();
        let count = StandardMorphism::from_classes(["a"], "<>bc").unwrap();
        let ctx = Ctx::new(sigma.clone(), vec![tags, count]);
        let x = ops::abs_concat(&StringObject::atom(&word("<a>"), &ctx), &StringObject::top(), &ctx);
        let x = x.join(&StringObject::atom(&word("<b>c"), &ctx), &ctx);
        let v = object_to_json(&x, &sigma);
        assert_eq!(object_from_json(&v, &sigma, "$").unwrap(), x);
    }

    #[test]
    fn decode_errors() {
        let sigma = Alphabet::from_str("ab");
        let e = object_from_json(&json!({"value": {"const": "a", "prefix": "a"}}), &sigma, "$").unwrap_err();
        assert_eq!(e.to_string(), "$.value: \"const\" excludes other equations");
        let e = object_from_json(&json!({"length": {"lo": 3, "hi": 2}}), &sigma, "$").unwrap_err();
        assert_eq!(e.path, "$.length");
        let e = object_from_json(&json!({"customs": [{"morphism": {"classes": [1]}, "prop": {}}]}), &sigma, "$")
            .unwrap_err();
        assert_eq!(e.path, "$.customs[0].morphism.classes[0]");
    }

    #[test]
    fn documents_share_a_session() {
        let d1 = ObjectDoc::from_value(&json!({"object": {"value": {"const": "ab"}, "length": {"lo": 2, "hi": 3}}}))
            .unwrap();
        let d2 = ObjectDoc::from_value(&json!({
            "properties": [{"classes": [{"chars": "c"}], "erase": "*"}],
            "object": {"value": {"const": "c"}, "length": {"lo": 1, "hi": 2}}
        }))
        .unwrap();
        let (ctx, objs) = decode_docs(&[d1, d2]).unwrap();
        assert_eq!(ctx.sigma, Alphabet::from_str("abcd"));
        assert_eq!(ctx.props.len(), 1);
        assert_eq!(objs[1].constant(), Some(word("c")));
        let d3 = ObjectDoc::from_value(&json!({"alphabet": "a", "object": {"value": {"const": "b"}}})).unwrap();
        assert!(matches!(decode_docs(&[d3]), Err(DocError::MissingLetter('b'))));
    }
}

#[cfg(test)]
mod props {
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::oracle::Instance;

    proptest! {
        #[test]
        fn objects_round_trip(seed in any::<u64>()) {
            let inst = Instance::random(&mut ChaCha8Rng::seed_from_u64(seed), 2);
            let ctx = inst.ctx();
            for spec in &inst.objs {
                let o = spec.build(&ctx);
                let v = object_to_json(&o, &ctx.sigma);
                let text = v.to_string();
                let back = object_from_json(&serde_json::from_str(&text).unwrap(), &ctx.sigma, "$").unwrap();
                prop_assert_eq!(back, o);
            }
        }
    }
}
