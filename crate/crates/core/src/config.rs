//! Loading custom string properties from JSON.
//!
//! ```json
//! {"properties":[{"name":"tags","classes":[{"chars":"<"},{"chars":">"}],"erase":"*","identity":""}]}
//! ```
//!
//! `"*"` stands for every session letter not otherwise mentioned by that
//! property, so morphisms are only built once the alphabet is known.

use std::collections::BTreeSet;
use std::path::Path;

use serde_json::Value;
use thiserror::Error;

use crate::morphism::StandardMorphism;
use crate::word::Alphabet;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {msg}")]
    Schema { path: String, msg: String },
}

fn schema(path: impl Into<String>, msg: impl Into<String>) -> ConfigError {
    ConfigError::Schema { path: path.into(), msg: msg.into() }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Letters {
    Rest,
    Listed(String),
}

impl Letters {
    fn listed(&self) -> &str {
        match self {
            Letters::Rest => "",
            Letters::Listed(s) => s,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertySpec {
    pub name: String,
    pub classes: Vec<String>,
    pub erase: Letters,
    pub identity: Letters,
}

impl PropertySpec {
    fn mentioned(&self) -> BTreeSet<char> {
        self.classes
            .iter()
            .flat_map(|c| c.chars())
            .chain(self.erase.listed().chars())
            .chain(self.identity.listed().chars())
            .collect()
    }

    fn check_partition(&self, path: &str) -> Result<(), ConfigError> {
        let mut seen = BTreeSet::new();
        let twice = |c: char| format!("letter {c:?} is assigned twice");
        for (i, class) in self.classes.iter().enumerate() {
            if let Some(c) = class.chars().find(|&c| !seen.insert(c)) {
                return Err(schema(format!("{path}.classes[{i}].chars"), twice(c)));
            }
        }
        for (field, letters) in [("erase", self.erase.listed()), ("identity", self.identity.listed())] {
            if let Some(c) = letters.chars().find(|&c| !seen.insert(c)) {
                return Err(schema(format!("{path}.{field}"), twice(c)));
            }
        }
        Ok(())
    }

    /// Letters left unmentioned map to themselves unless `erase` is `"*"`.
    pub fn morphism(&self, sigma: &Alphabet, path: &str) -> Result<StandardMorphism, ConfigError> {
        let mentioned = self.mentioned();
        let erase: String = match &self.erase {
            Letters::Rest => sigma.letters().filter(|c| !mentioned.contains(c)).collect(),
            Letters::Listed(s) => s.clone(),
        };
        StandardMorphism::from_classes(&self.classes, &erase).map_err(|e| schema(path, e.to_string()))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PropertyConfig {
    pub properties: Vec<PropertySpec>,
}

impl PropertyConfig {
    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        Self::from_value(&serde_json::from_str(text)?)
    }

    pub fn from_value(doc: &Value) -> Result<Self, ConfigError> {
        let obj = doc.as_object().ok_or_else(|| schema("$", "expected an object"))?;
        let props = match obj.get("properties") {
            None => return Ok(Self::default()),
            Some(p) => p.as_array().ok_or_else(|| schema("properties", "expected an array"))?,
        };
        let properties = props
            .iter()
            .enumerate()
            .map(|(i, p)| parse_property(p, &format!("properties[{i}]")))
            .collect::<Result<_, _>>()?;
        Ok(PropertyConfig { properties })
    }

    /// Every letter named explicitly by some property.
    pub fn letters(&self) -> BTreeSet<char> {
        self.properties.iter().flat_map(PropertySpec::mentioned).collect()
    }

    pub fn morphisms(&self, sigma: &Alphabet) -> Result<Vec<(String, StandardMorphism)>, ConfigError> {
        self.properties
            .iter()
            .enumerate()
            .map(|(i, p)| Ok((p.name.clone(), p.morphism(sigma, &format!("properties[{i}]"))?)))
            .collect()
    }
}

fn parse_letters(v: Option<&Value>, path: &str) -> Result<Letters, ConfigError> {
    match v {
        None => Ok(Letters::Listed(String::new())),
        Some(Value::String(s)) if s == "*" => Ok(Letters::Rest),
        Some(Value::String(s)) => Ok(Letters::Listed(s.clone())),
        Some(_) => Err(schema(path, "expected a string of letters or \"*\"")),
    }
}

fn parse_property(v: &Value, path: &str) -> Result<PropertySpec, ConfigError> {
    let obj = v.as_object().ok_or_else(|| schema(path, "expected an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "name" | "classes" | "erase" | "identity") {
            return Err(schema(format!("{path}.{key}"), "unknown field"));
        }
    }
    let name = match obj.get("name") {
        None => String::new(),
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(schema(format!("{path}.name"), "expected a string")),
    };
    let classes = match obj.get("classes") {
        None => Vec::new(),
        Some(Value::Array(cs)) => cs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let cpath = format!("{path}.classes[{j}]");
                match c.get("chars") {
                    Some(Value::String(s)) if !s.is_empty() => Ok(s.clone()),
                    Some(Value::String(_)) => Err(schema(format!("{cpath}.chars"), "empty class")),
                    _ => Err(schema(format!("{cpath}.chars"), "expected a string")),
                }
            })
            .collect::<Result<_, _>>()?,
        Some(_) => return Err(schema(format!("{path}.classes"), "expected an array")),
    };
    let erase = parse_letters(obj.get("erase"), &format!("{path}.erase"))?;
    let identity = parse_letters(obj.get("identity"), &format!("{path}.identity"))?;
    if erase == Letters::Rest && identity == Letters::Rest {
        return Err(schema(path, "only one of erase and identity may be \"*\""));
    }
    let spec = PropertySpec { name, classes, erase, identity };
    spec.check_partition(path)?;
    Ok(spec)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TAGS: &str = r#"{"properties":[{"name":"tags","classes":[{"chars":"<"},{"chars":">"}],"erase":"*","identity":""}]}"#;

    #[test]
    fn tags_keep_brackets() {
        let cfg = PropertyConfig::parse(TAGS).unwrap();
        assert_eq!(cfg.letters(), ['<', '>'].into());
        let sigma = Alphabet::from_str("<>/abc");
        let (name, m) = cfg.morphisms(&sigma).unwrap().remove(0);
        assert_eq!(name, "tags");
        assert_eq!(m, StandardMorphism::from_classes(["<", ">"], "/abc").unwrap());
    }

    #[test]
    fn empty_list() {
        let cfg = PropertyConfig::parse(r#"{"properties":[]}"#).unwrap();
        assert!(cfg.morphisms(&Alphabet::from_str("ab")).unwrap().is_empty());
    }

    #[test]
    fn identity_rest_erases_listed() {
        let cfg = PropertyConfig::parse(r#"{"properties":[{"classes":[{"chars":"bc"}],"erase":"a","identity":"*"}]}"#)
            .unwrap();
        let m = cfg.morphisms(&Alphabet::from_str("abcd")).unwrap().remove(0).1;
        assert_eq!(m.image('a'), None);
        assert_eq!(m.image('c'), Some('b'));
        assert_eq!(m.image('d'), Some('d'));
    }

    #[test]
    fn errors_carry_paths() {
        let err = |s: &str| PropertyConfig::parse(s).unwrap_err().to_string();
        assert_eq!(
            err(r#"{"properties":[{"classes":[{"chars":"ab"}],"erase":"b"}]}"#),
            "properties[0].erase: letter 'b' is assigned twice"
        );
        assert_eq!(
            err(r#"{"properties":[{"erase":"*","identity":"*"}]}"#),
            "properties[0]: only one of erase and identity may be \"*\""
        );
        assert_eq!(err(r#"{"properties":[{"classes":[{"chars":3}]}]}"#), "properties[0].classes[0].chars: expected a string");
        assert_eq!(err(r#"{"properties":{}}"#), "properties: expected an array");
        assert_eq!(err(r#"{"properties":[{"erse":"a"}]}"#), "properties[0].erse: unknown field");
    }
}
