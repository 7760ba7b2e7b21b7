//! The JSON document every CLI command prints.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::error::{Error, Result};
use crate::semigroup::SearchBounds;

pub const SCHEMA: &str = "ritt-lab/1";
pub const BOUNDS_ENV: &str = "RITT_LAB_BOUNDS";

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub command: String,
    /// Echo of the arguments, keyed by name.
    pub input: Map<String, Value>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bounds: Option<SearchBounds>,
    pub citations: Vec<String>,
}

impl Report {
    pub fn new<I, K, V>(command: &str, input: I, result: &impl Serialize) -> Result<Self>
    where
        I: IntoIterator<Item = (K, V)>,
        K: Into<String>,
        V: Into<Value>,
    {
        let result = serde_json::to_value(result)
            .map_err(|e| Error::InternalInconsistency(format!("serialization failed: {e}")))?;
        Ok(Report {
            schema: SCHEMA,
            command: command.to_string(),
            input: input
                .into_iter()
                .map(|(k, v)| (k.into(), v.into()))
                .collect(),
            result,
            bounds: None,
            citations: Vec::new(),
        })
    }

    pub fn with_bounds(mut self, bounds: SearchBounds) -> Self {
        self.bounds = Some(bounds);
        self
    }

    pub fn with_citations<S: Into<String>>(mut self, labels: impl IntoIterator<Item = S>) -> Self {
        self.citations.extend(labels.into_iter().map(Into::into));
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values are plain JSON")
    }
}

/// Parses `"tmax,lmax,wordmax"`.
pub fn parse_bounds(text: &str) -> Result<SearchBounds> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::BadParams(format!("bad bounds {text:?}: {e}")))?;
    match parts[..] {
        [t, l, w] => SearchBounds::new(t, l, w),
        _ => Err(Error::BadParams(format!(
            "bad bounds {text:?}: expected tmax,lmax,wordmax"
        ))),
    }
}

/// Bounds from [`BOUNDS_ENV`] if set, else the defaults.
pub fn bounds_from_env() -> Result<SearchBounds> {
    match std::env::var(BOUNDS_ENV) {
        Ok(v) => parse_bounds(&v),
        Err(_) => Ok(SearchBounds::default()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bounds_parse() {
        assert_eq!(
            parse_bounds("1, 2,3").unwrap(),
            SearchBounds::new(1, 2, 3).unwrap()
        );
        assert!(parse_bounds("1,2").is_err());
        assert!(parse_bounds("0,2,3").is_err());
        assert!(parse_bounds("a,b,c").is_err());
    }

    #[test]
    fn report_shape() {
        let r = Report::new("chebyshev", [("n", "3")], &"4*z^3 - 3*z").unwrap();
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["schema"], SCHEMA);
        assert_eq!(v["input"]["n"], "3");
        assert_eq!(v["result"], "4*z^3 - 3*z");
        assert!(v.get("bounds").is_none());
    }
}
