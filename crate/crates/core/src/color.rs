use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A color name, i.e. a simple reflection / an object of the colored TL 2-category.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Color(Arc<str>);

impl Color {
    pub fn new(name: &str) -> Result<Self> {
        let name = name.trim();
        if name.is_empty() || name.contains(',') || name.chars().any(char::is_whitespace) {
            return Err(Error::Parse(format!("invalid color name {name:?}")));
        }
        Ok(Color(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl Serialize for Color {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for Color {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Color::new(&s).map_err(serde::de::Error::custom)
    }
}

/// Splits a word into colors: comma-separated when it contains a comma,
/// otherwise one color per character. The empty string is the empty word.
pub fn parse_colors(word: &str) -> Result<Vec<Color>> {
    let word = word.trim();
    if word.is_empty() {
        return Ok(Vec::new());
    }
    if word.contains(',') {
        word.split(',').map(Color::new).collect()
    } else {
        word.chars().map(|c| Color::new(&c.to_string())).collect()
    }
}

/// Inverse of [`parse_colors`]: concatenates single-character names, otherwise
/// joins with commas.
pub fn format_colors(colors: &[Color]) -> String {
    if colors.iter().all(|c| c.name().chars().count() == 1) {
        colors.iter().map(Color::name).collect()
    } else {
        colors.iter().map(Color::name).collect::<Vec<_>>().join(",")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_word_forms() {
        let short = parse_colors("rbg").unwrap();
        assert_eq!(format_colors(&short), "rbg");
        let long = parse_colors("red,blue,red").unwrap();
        assert_eq!(long.len(), 3);
        assert_eq!(format_colors(&long), "red,blue,red");
        assert!(parse_colors("").unwrap().is_empty());
        assert!(parse_colors("r,,b").is_err());
    }
}
