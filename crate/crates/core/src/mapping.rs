//! API mapping files.
//!
//! ```text
//! deprecated: android.widget.TimePicker#getCurrentMinute()
//! replacement: android.widget.TimePicker#getMinute()
//! guard-symbol: android.os.Build.VERSION_CODES.M
//! guard-level: 23
//! ```

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ApiSignature {
    /// Fully qualified receiver type, when known.
    pub receiver_type: Option<String>,
    pub method: String,
    pub params: Vec<String>,
}

impl ApiSignature {
    pub fn new(receiver_type: Option<&str>, method: &str, params: &[&str]) -> Self {
        ApiSignature {
            receiver_type: receiver_type.map(str::to_string),
            method: method.to_string(),
            params: params.iter().map(|p| p.to_string()).collect(),
        }
    }

    pub fn arity(&self) -> usize {
        self.params.len()
    }

    /// Unqualified receiver type (`TimePicker` for `android.widget.TimePicker`).
    pub fn simple_receiver_type(&self) -> Option<&str> {
        self.receiver_type.as_deref().map(simple_type_name)
    }

    /// Unqualified type of parameter `i`.
    pub fn simple_param_type(&self, i: usize) -> Option<&str> {
        self.params.get(i).map(|p| simple_type_name(p))
    }
}

/// Strip package qualifiers from a type: `android.media.AudioAttributes` →
/// `AudioAttributes`. Nested types keep their outer class
/// (`android.app.Notification.Action` → `Notification.Action`), recognised
/// by the capitalised segments.
pub fn simple_type_name(ty: &str) -> &str {
    let base = ty.split('<').next().unwrap_or(ty);
    let mut start = 0;
    for (i, seg) in base.split('.').scan(0usize, |off, s| {
        let here = *off;
        *off += s.len() + 1;
        Some((here, s))
    }) {
        if seg.chars().next().is_some_and(char::is_uppercase) {
            start = i;
            break;
        }
        start = i;
    }
    &ty[start..]
}

impl fmt::Display for ApiSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = &self.receiver_type {
            f.write_str(r)?;
        }
        write!(f, "#{}({})", self.method, self.params.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MappingError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing `{0}:` entry")]
    Missing(&'static str),
    #[error("guard-level {level} does not match {symbol} (level {expected})")]
    LevelMismatch { symbol: String, level: u32, expected: u32 },
}

impl FromStr for ApiSignature {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        let (recv, rest) = match s.split_once('#') {
            Some((r, rest)) => (r.trim(), rest),
            None => ("", s),
        };
        let open = rest.find('(').ok_or_else(|| format!("expected `(` in `{s}`"))?;
        if !rest.ends_with(')') {
            return Err(format!("expected `)` at end of `{s}`"));
        }
        let method = rest[..open].trim();
        if method.is_empty() || !method.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '$') {
            return Err(format!("invalid method name in `{s}`"));
        }
        let inner = rest[open + 1..rest.len() - 1].trim();
        let params = split_params(inner).into_iter().map(|p| p.split_whitespace().collect::<Vec<_>>().join(" ")).collect();
        Ok(ApiSignature { receiver_type: (!recv.is_empty()).then(|| recv.to_string()), method: method.to_string(), params })
    }
}

/// Split on top-level commas, respecting generic brackets.
fn split_params(s: &str) -> Vec<&str> {
    if s.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '<' => depth += 1,
            '>' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApiMapping {
    pub deprecated: ApiSignature,
    pub replacement: ApiSignature,
    pub guard_symbol: String,
    pub guard_level: u32,
}

impl ApiMapping {
    pub fn parse(text: &str) -> Result<ApiMapping, MappingError> {
        let mut deprecated = None;
        let mut replacement = None;
        let mut symbol = None;
        let mut level = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| MappingError::Syntax { line: i + 1, message };
            let (key, value) = line.split_once(':').ok_or_else(|| err("expected `key: value`".into()))?;
            let value = value.trim();
            match key.trim() {
                "deprecated" => deprecated = Some(value.parse::<ApiSignature>().map_err(err)?),
                "replacement" => replacement = Some(value.parse::<ApiSignature>().map_err(err)?),
                "guard-symbol" => symbol = Some(value.to_string()),
                "guard-level" => {
                    let n: u32 = value.parse().map_err(|_| err(format!("invalid guard-level `{value}`")))?;
                    if n < 1 {
                        return Err(err("guard-level must be at least 1".into()));
                    }
                    level = Some(n);
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        let symbol = symbol.ok_or(MappingError::Missing("guard-symbol"))?;
        let level = match (level, guard_symbol_level(&symbol)) {
            (Some(l), Some(expected)) if l != expected => return Err(MappingError::LevelMismatch { symbol, level: l, expected }),
            (Some(l), _) => l,
            (None, Some(expected)) => expected,
            (None, None) => return Err(MappingError::Missing("guard-level")),
        };
        Ok(ApiMapping {
            deprecated: deprecated.ok_or(MappingError::Missing("deprecated"))?,
            replacement: replacement.ok_or(MappingError::Missing("replacement"))?,
            guard_symbol: symbol,
            guard_level: level,
        })
    }

    pub fn to_text(&self) -> String {
        format!(
            "deprecated: {}\nreplacement: {}\nguard-symbol: {}\nguard-level: {}\n",
            self.deprecated, self.replacement, self.guard_symbol, self.guard_level
        )
    }
}

const VERSION_CODES: &[(&str, u32)] = &[
    ("BASE", 1),
    ("BASE_1_1", 2),
    ("CUPCAKE", 3),
    ("DONUT", 4),
    ("ECLAIR", 5),
    ("ECLAIR_0_1", 6),
    ("ECLAIR_MR1", 7),
    ("FROYO", 8),
    ("GINGERBREAD", 9),
    ("GINGERBREAD_MR1", 10),
    ("HONEYCOMB", 11),
    ("HONEYCOMB_MR1", 12),
    ("HONEYCOMB_MR2", 13),
    ("ICE_CREAM_SANDWICH", 14),
    ("ICE_CREAM_SANDWICH_MR1", 15),
    ("JELLY_BEAN", 16),
    ("JELLY_BEAN_MR1", 17),
    ("JELLY_BEAN_MR2", 18),
    ("KITKAT", 19),
    ("KITKAT_WATCH", 20),
    ("LOLLIPOP", 21),
    ("LOLLIPOP_MR1", 22),
    ("M", 23),
    ("N", 24),
    ("N_MR1", 25),
    ("O", 26),
    ("O_MR1", 27),
    ("P", 28),
    ("Q", 29),
    ("R", 30),
    ("S", 31),
    ("S_V2", 32),
    ("TIRAMISU", 33),
    ("UPSIDE_DOWN_CAKE", 34),
    ("VANILLA_ICE_CREAM", 35),
];

/// SDK level of a guard symbol: `android.os.Build.VERSION_CODES.M`,
/// `VERSION_CODES.M`, `Build.VERSION_CODES.M` or a bare number.
pub fn guard_symbol_level(symbol: &str) -> Option<u32> {
    let symbol = symbol.trim();
    if let Ok(n) = symbol.parse::<u32>() {
        return Some(n);
    }
    let (prefix, code) = symbol.rsplit_once('.')?;
    if !(prefix == "VERSION_CODES" || prefix.ends_with(".VERSION_CODES")) {
        return None;
    }
    VERSION_CODES.iter().find(|(name, _)| *name == code).map(|(_, l)| *l)
}

/// Known version-code names, for generators and documentation.
pub fn version_codes() -> impl Iterator<Item = (&'static str, u32)> {
    VERSION_CODES.iter().copied()
}
