//! The embedded catalog of known diagrams and the recognizer built on it.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::diagram::{canonical_form, parse, Diagram};
use crate::error::{Error, Result};

const CATALOG_JSON: &str = include_str!("../../data/known_diagrams.json");

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeylRule {
    Fixed(String),
    ByParity { even: String, odd: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawExpected {
    pub l: [u32; 2],
    pub weyl: WeylRule,
    pub hbar: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawEntry {
    pub name: String,
    #[serde(default = "default_ambient")]
    pub ambient: String,
    #[serde(default)]
    pub param: Option<String>,
    #[serde(default)]
    pub min_param: Option<i64>,
    #[serde(default)]
    pub diagram: Option<String>,
    #[serde(default)]
    pub expected: Option<RawExpected>,
    #[serde(default)]
    pub notes: BTreeMap<String, String>,
    #[serde(default)]
    pub out_of_scope: Option<String>,
}

fn default_ambient() -> String {
    "S3xS3".into()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCatalog {
    pub schema: String,
    pub version: u32,
    pub entries: Vec<RawEntry>,
}

pub fn raw_catalog() -> &'static RawCatalog {
    static CAT: OnceLock<RawCatalog> = OnceLock::new();
    CAT.get_or_init(|| serde_json::from_str(CATALOG_JSON).expect("embedded catalog is valid JSON"))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub l_minus: u32,
    pub l_plus: u32,
    pub weyl_type: String,
    pub hbar: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub param: Option<i64>,
    pub diagram_text: String,
    #[serde(skip)]
    pub diagram: Diagram,
    pub expected: Expected,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CatalogEntry {
    /// `P_3`, `R`, ...
    pub fn label(&self) -> String {
        match self.param {
            Some(n) => format!("{}_{n}", self.name.split('_').next().unwrap_or(&self.name)),
            None => self.name.clone(),
        }
    }
}

/// Evaluates `a·x + b` written as e.g. `2k-1`, `k`, `p+1`.
fn eval_linear(expr: &str, var: char, value: i64) -> Option<i64> {
    let pos = expr.find(var)?;
    let coeff = match &expr[..pos] {
        "" => 1,
        c => c.parse().ok()?,
    };
    let rest = &expr[pos + var.len_utf8()..];
    let offset = match rest {
        "" => 0,
        r if r.starts_with('+') => r[1..].parse().ok()?,
        r if r.starts_with('-') => -r[1..].parse::<i64>().ok()?,
        _ => return None,
    };
    Some(coeff * value + offset)
}

/// Replaces each `{expr}` placeholder in `template`; other braces are kept.
pub fn instantiate(template: &str, var: char, value: i64) -> String {
    let mut out = String::new();
    let mut rest = template;
    while let Some(open) = rest.find('{') {
        out.push_str(&rest[..open]);
        let after = &rest[open + 1..];
        match after.find('}').and_then(|close| eval_linear(&after[..close], var, value).map(|v| (close, v))) {
            Some((close, v)) => {
                out.push_str(&v.to_string());
                rest = &after[close + 1..];
            }
            None => {
                out.push('{');
                rest = after;
            }
        }
    }
    out.push_str(rest);
    out
}

fn normalize_name(name: &str) -> String {
    name.trim().replace(['^', ' '], "").to_ascii_uppercase()
}

fn find_raw(name: &str) -> Option<&'static RawEntry> {
    let want = normalize_name(name);
    raw_catalog().entries.iter().find(|e| {
        let n = normalize_name(&e.name);
        n == want || n.split('_').next() == Some(want.as_str()) && e.param.is_some()
    })
}

/// Instantiates a catalog row.
pub fn lookup(name: &str, param: Option<i64>) -> Result<CatalogEntry> {
    let raw = find_raw(name).ok_or_else(|| Error::UnknownEntry(format!("no catalog entry named {name}")))?;
    if let Some(why) = &raw.out_of_scope {
        return Err(Error::UnknownEntry(format!("{} is out of scope: {why}", raw.name)));
    }
    let (text, param) = match (&raw.param, param) {
        (Some(var), Some(v)) => {
            let min = raw.min_param.unwrap_or(1);
            if v < min {
                return Err(Error::UnknownEntry(format!("{} needs {var} >= {min}", raw.name)));
            }
            let c = var.chars().next().unwrap_or('k');
            (instantiate(raw.diagram.as_deref().unwrap_or_default(), c, v), Some(v))
        }
        (Some(var), None) => return Err(Error::UnknownEntry(format!("{} needs a value for {var}", raw.name))),
        (None, _) => (raw.diagram.clone().unwrap_or_default(), None),
    };
    let exp = raw.expected.as_ref().ok_or_else(|| Error::UnknownEntry(format!("{} has no expectations", raw.name)))?;
    let weyl_type = match (&exp.weyl, param) {
        (WeylRule::Fixed(w), _) => w.clone(),
        (WeylRule::ByParity { even, .. }, Some(v)) if v % 2 == 0 => even.clone(),
        (WeylRule::ByParity { odd, .. }, _) => odd.clone(),
    };
    let note = param
        .and_then(|v| raw.notes.get(&v.to_string()))
        .or_else(|| raw.notes.get("*"))
        .cloned();
    Ok(CatalogEntry {
        name: raw.name.clone(),
        param,
        diagram: parse(&text)?,
        diagram_text: text,
        expected: Expected { l_minus: exp.l[0], l_plus: exp.l[1], weyl_type, hbar: exp.hbar.clone() },
        note,
    })
}

/// In-scope rows, with parametrized families instantiated for `1..=max_param`.
pub fn s3xs3_entries(max_param: i64) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for raw in raw_catalog().entries.iter().filter(|e| e.out_of_scope.is_none()) {
        match &raw.param {
            Some(_) => {
                for v in raw.min_param.unwrap_or(1)..=max_param {
                    out.push(lookup(&raw.name, Some(v))?);
                }
            }
            None => out.push(lookup(&raw.name, None)?),
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Recognition {
    pub label: String,
    pub name: String,
    pub param: Option<i64>,
    /// Other catalog rows with the same canonical form.
    pub aliases: Vec<String>,
}

fn slope_multiset(d: &Diagram) -> Vec<i64> {
    let mut v: Vec<i64> = [&d.k_minus, &d.k_plus]
        .iter()
        .filter_map(|k| k.circle())
        .flat_map(|c| [c.p.abs(), c.q.abs()])
        .collect();
    v.sort();
    v
}

/// Matches `d` against catalog rows by canonical form; parametrized families
/// are tried for parameters up to the largest slope plus one.
pub fn recognize(d: &Diagram) -> Result<Option<Recognition>> {
    let canon = canonical_form(d)?;
    let slopes = slope_multiset(d);
    let max = slopes.iter().copied().max().unwrap_or(0) + 1;
    let mut hits: Vec<CatalogEntry> = Vec::new();
    for raw in raw_catalog().entries.iter().filter(|e| e.out_of_scope.is_none()) {
        let params: Vec<Option<i64>> = match raw.param {
            Some(_) => (raw.min_param.unwrap_or(1)..=max).map(Some).collect(),
            None => vec![None],
        };
        for p in params {
            let entry = lookup(&raw.name, p)?;
            if slope_multiset(&entry.diagram) != slopes || entry.diagram.h.order() != d.h.order() {
                continue;
            }
            if canonical_form(&entry.diagram)? == canon {
                hits.push(entry);
            }
        }
    }
    let mut it = hits.into_iter();
    Ok(it.next().map(|first| Recognition {
        label: first.label(),
        name: first.name.clone(),
        param: first.param,
        aliases: it.map(|e| e.label()).collect(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn templates() {
        assert_eq!(instantiate("C(j,{2k-1},{2k+1}); H=gen{(i,i)}", 'k', 3), "C(j,5,7); H=gen{(i,i)}");
        assert_eq!(instantiate("e(i,{p}/2)", 'p', 4), "e(i,4/2)");
    }

    #[test]
    fn lookups() {
        let p1 = lookup("P_k", Some(1)).unwrap();
        assert_eq!(p1.note.as_deref(), Some("P_1 = S^7"));
        assert_eq!(p1.expected.weyl_type, "D6");
        assert_eq!(lookup("P", Some(2)).unwrap().expected.weyl_type, "D3");
        let r = lookup("R", None).unwrap();
        assert_eq!(r.diagram.h.structure(), "Z4+Z2");
        assert!(matches!(lookup("X", None), Err(Error::UnknownEntry(_))));
        assert!(matches!(lookup("B13", None), Err(Error::UnknownEntry(_))));
    }

    #[test]
    fn recognizes_aliases() {
        let s7 = lookup("S7", None).unwrap();
        let r = recognize(&s7.diagram).unwrap().unwrap();
        assert_eq!(r.label, "P_1");
        assert_eq!(r.aliases, vec!["S7".to_string()]);
    }
}
