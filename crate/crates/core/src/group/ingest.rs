//! The group input format: a JSON object with exactly one of `"preset"`,
//! `"permutations"` (one-line images on `0..n-1`) or `"table"` (row-major
//! multiplication table with identity `0`).

use serde::Deserialize;

use super::{group_preset, Caps, Group};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupInput {
    #[serde(default)]
    pub preset: Option<String>,
    #[serde(default)]
    pub permutations: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub table: Option<Vec<Vec<usize>>>,
}

impl GroupInput {
    pub fn parse(text: &str) -> Result<GroupInput> {
        let input: GroupInput =
            serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed group JSON: {e}")))?;
        let given = [input.preset.is_some(), input.permutations.is_some(), input.table.is_some()]
            .iter()
            .filter(|&&b| b)
            .count();
        if given != 1 {
            return Err(Error::InvalidInput(format!(
                "expected exactly one of \"preset\", \"permutations\", \"table\"; found {given}"
            )));
        }
        Ok(input)
    }

    /// Human-readable name used in reports.
    pub fn name(&self) -> String {
        match (&self.preset, &self.permutations) {
            (Some(p), _) => p.clone(),
            (None, Some(_)) => "permutation group".to_string(),
            _ => "table group".to_string(),
        }
    }

    /// Builds the group, checking all axioms.
    pub fn build(&self, caps: Caps) -> Result<Group> {
        let g = self.build_unverified(caps)?;
        g.check_axioms()?;
        Ok(g)
    }

    /// Builds the group but leaves associativity of a table to the caller,
    /// so a verification run can report it as a failed check.
    pub fn build_unverified(&self, caps: Caps) -> Result<Group> {
        if let Some(p) = &self.preset {
            return group_preset(p, None, caps);
        }
        if let Some(gens) = &self.permutations {
            let degree = gens.first().map_or(1, Vec::len);
            if gens.iter().any(|p| p.len() != degree) {
                return Err(Error::InvalidInput("permutations of different degrees".into()));
            }
            return Group::from_permutations(degree, gens, caps);
        }
        let rows = self.table.as_ref().expect("exactly one source");
        Group::from_table_unverified(rows, caps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn three_sources_agree_on_s3() {
        let caps = Caps::default();
        let a = GroupInput::parse(r#"{"preset": "S3"}"#).unwrap().build(caps).unwrap();
        let b = GroupInput::parse(r#"{"permutations": [[1, 2, 0], [1, 0, 2]]}"#)
            .unwrap()
            .build(caps)
            .unwrap();
        assert_eq!(a.order(), 6);
        assert_eq!(b.order(), 6);
        let rows = serde_json::to_string(&a.table_rows()).unwrap();
        let c = GroupInput::parse(&format!(r#"{{"table": {rows}}}"#)).unwrap().build(caps).unwrap();
        assert_eq!(c.table_rows(), a.table_rows());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(GroupInput::parse("{").is_err());
        assert!(GroupInput::parse("{}").is_err());
        assert!(GroupInput::parse(r#"{"preset": "S3", "table": [[0]]}"#).is_err());
        assert!(GroupInput::parse(r#"{"presets": "S3"}"#).is_err());
        let ragged = GroupInput::parse(r#"{"permutations": [[1, 0], [0, 2, 1]]}"#).unwrap();
        assert!(ragged.build(Caps::default()).is_err());
    }

    #[test]
    fn non_associative_latin_square_passes_shape_check_only() {
        // A loop of order 5 with identity 0 that is not a group.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let input = GroupInput {
            preset: None,
            permutations: None,
            table: Some(rows),
        };
        let g = input.build_unverified(Caps::default()).unwrap();
        assert!(g.check_axioms().is_err());
        assert!(input.build(Caps::default()).is_err());
    }
}
