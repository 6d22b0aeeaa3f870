//! Line-based group files:
//!
//! ```text
//! # the symmetric group on three points
//! degree 3
//! name S3
//! gen (1 2)
//! gen (1 2 3)
//! ```
//!
//! `degree` must be the first non-comment line. `name` is optional.

use std::path::Path;

use sigma_core::{PermGroup, Permutation};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GroupFileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Group {
        line: usize,
        source: sigma_core::Error,
    },
}

#[derive(Clone, Debug)]
pub struct GroupFile {
    pub degree: usize,
    pub name: Option<String>,
    pub generators: Vec<String>,
}

impl GroupFile {
    pub fn from_group(g: &PermGroup, name: Option<&str>) -> Self {
        GroupFile {
            degree: g.degree(),
            name: name.map(str::to_string),
            generators: g
                .generators()
                .iter()
                .map(Permutation::format_cycles)
                .collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("degree {}\n", self.degree);
        if let Some(name) = &self.name {
            out.push_str(&format!("name {name}\n"));
        }
        for g in &self.generators {
            out.push_str(&format!("gen {g}\n"));
        }
        out
    }
}

fn syntax(line: usize, message: impl Into<String>) -> GroupFileError {
    GroupFileError::Syntax {
        line,
        message: message.into(),
    }
}

/// Parses group-file text and builds the group it describes.
pub fn parse_group_text(text: &str) -> Result<(GroupFile, PermGroup), GroupFileError> {
    let mut file: Option<GroupFile> = None;
    let mut perms = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (keyword, rest) = trimmed
            .split_once(char::is_whitespace)
            .map(|(k, r)| (k, r.trim()))
            .unwrap_or((trimmed, ""));
        match (keyword, file.as_mut()) {
            ("degree", None) => {
                let degree: usize = rest
                    .parse()
                    .map_err(|_| syntax(line, format!("invalid degree {rest:?}")))?;
                if degree == 0 {
                    return Err(syntax(line, "degree must be positive"));
                }
                file = Some(GroupFile {
                    degree,
                    name: None,
                    generators: Vec::new(),
                });
            }
            ("degree", Some(_)) => return Err(syntax(line, "degree declared twice")),
            (_, None) => return Err(syntax(line, "expected `degree N` first")),
            ("name", Some(f)) => {
                if f.name.is_some() {
                    return Err(syntax(line, "name declared twice"));
                }
                f.name = Some(rest.to_string());
            }
            ("gen", Some(f)) => {
                let p = Permutation::parse_cycles(rest, f.degree)
                    .map_err(|source| GroupFileError::Group { line, source })?;
                f.generators.push(rest.to_string());
                perms.push(p);
            }
            (other, Some(_)) => return Err(syntax(line, format!("unknown keyword {other:?}"))),
        }
    }
    let file = file.ok_or_else(|| syntax(text.lines().count().max(1), "missing `degree N`"))?;
    let group = PermGroup::new(file.degree, perms)
        .map_err(|source| GroupFileError::Group { line: 0, source })?;
    Ok((file, group))
}

pub fn parse_group_file(path: &Path) -> Result<PermGroup, GroupFileError> {
    let text = std::fs::read_to_string(path).map_err(|source| GroupFileError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_group_text(&text).map(|(_, g)| g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_three() {
        let (f, g) = parse_group_text("degree 3\ngen (1 2)\ngen (1 2 3)\n").unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(f.generators.len(), 2);
    }

    #[test]
    fn no_generators_is_trivial() {
        let (_, g) = parse_group_text("degree 4\n").unwrap();
        assert!(g.is_trivial());
        assert_eq!(g.degree(), 4);
    }

    #[test]
    fn point_beyond_degree_reports_its_line() {
        let err = parse_group_text("degree 3\ngen (1 4)\n").unwrap_err();
        assert!(
            matches!(err, GroupFileError::Group { line: 2, .. }),
            "{err}"
        );
        assert!(err.to_string().starts_with("line 2:"));
    }

    #[test]
    fn comments_names_and_blank_lines() {
        let text = "# header\n\ndegree 5\nname C6\n# mid\ngen (1 2)(3 4 5)\n";
        let (f, g) = parse_group_text(text).unwrap();
        assert_eq!(f.name.as_deref(), Some("C6"));
        assert_eq!(g.order(), 6);
    }

    #[test]
    fn structural_errors() {
        for (text, line) in [
            ("gen (1 2)\n", 1),
            ("degree 3\ndegree 3\n", 2),
            ("degree x\n", 1),
            ("degree 0\n", 1),
            ("degree 3\nfoo bar\n", 2),
            ("# only a comment\n", 1),
            ("", 1),
        ] {
            match parse_group_text(text).unwrap_err() {
                GroupFileError::Syntax { line: l, .. } => assert_eq!(l, line, "{text:?}"),
                e => panic!("{text:?}: unexpected {e}"),
            }
        }
    }

    #[test]
    fn written_text_reparses() {
        let g = PermGroup::symmetric(5);
        let text = GroupFile::from_group(&g, Some("S5")).to_text();
        let (f, back) = parse_group_text(&text).unwrap();
        assert_eq!(f.name.as_deref(), Some("S5"));
        assert!(back.equals(&g).unwrap());
    }
}
