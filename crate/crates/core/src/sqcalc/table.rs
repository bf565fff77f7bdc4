use std::ops::RangeInclusive;

use serde::{Deserialize, Serialize};

use super::value::{sq_nm, Case};
use crate::abelian::CanonicalGroup;
use crate::chaincx::Degree;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableFormat {
    Md,
    Csv,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "md" | "markdown" => Ok(TableFormat::Md),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            _ => Err(Error::InvalidArgument(format!("unknown table format '{s}'"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableCell {
    pub m: Degree,
    pub n: Degree,
    pub case: Case,
    pub symbolic: String,
    /// Evaluated group when coefficients were given, as a group expression.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "group_expr")]
    pub group: Option<CanonicalGroup>,
}

mod group_expr {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::abelian::CanonicalGroup;
    use crate::expr::{format_group, parse_group_expr};

    pub fn serialize<S: Serializer>(g: &Option<CanonicalGroup>, s: S) -> Result<S::Ok, S::Error> {
        match g {
            Some(g) => s.serialize_str(&format_group(g)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<CanonicalGroup>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|t| parse_group_expr(&t).map_err(serde::de::Error::custom))
            .transpose()
    }
}

/// A block of the low-dimension table: rows `m`, columns `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SqTable {
    pub rows: Vec<Degree>,
    pub cols: Vec<Degree>,
    pub cells: Vec<TableCell>,
}

/// The three printed blocks as `(n range, m range)`.
pub const PRINTED_BLOCKS: [(RangeInclusive<Degree>, RangeInclusive<Degree>); 3] = [(1..=3, 1..=4), (4..=5, 2..=5), (6..=7, 2..=6)];

impl SqTable {
    /// Symbolic cells, evaluated at `(A, D)` when given.
    pub fn build(
        ns: RangeInclusive<Degree>,
        ms: RangeInclusive<Degree>,
        coeffs: Option<(&CanonicalGroup, &CanonicalGroup)>,
    ) -> Result<SqTable> {
        let rows: Vec<Degree> = ms.collect();
        let cols: Vec<Degree> = ns.collect();
        if rows.iter().any(|&m| m < 1) {
            return Err(Error::InvalidArgument("table rows need m ≥ 1".into()));
        }
        let mut cells = Vec::new();
        for &m in &rows {
            for &n in &cols {
                let group = match coeffs {
                    Some((a, d)) => Some(sq_nm(a, d, n, m)?.group),
                    None => None,
                };
                cells.push(TableCell { m, n, case: Case::select(n, m), symbolic: super::sq_nm_symbolic(n, m), group });
            }
        }
        Ok(SqTable { rows, cols, cells })
    }

    pub fn printed_blocks(coeffs: Option<(&CanonicalGroup, &CanonicalGroup)>) -> Result<Vec<SqTable>> {
        PRINTED_BLOCKS.iter().map(|(n, m)| Self::build(n.clone(), m.clone(), coeffs)).collect()
    }

    pub fn cell(&self, m: Degree, n: Degree) -> Option<&TableCell> {
        self.cells.iter().find(|c| c.m == m && c.n == n)
    }

    fn text(c: &TableCell) -> String {
        match &c.group {
            Some(g) => format!("{} = {}", c.symbolic, g),
            None => c.symbolic.clone(),
        }
    }

    pub fn render(&self, format: TableFormat) -> Result<String> {
        Ok(match format {
            TableFormat::Md => {
                let mut s = String::from("| m\\n |");
                for n in &self.cols {
                    s += &format!(" {n} |");
                }
                s += "\n|---|";
                s += &"---|".repeat(self.cols.len());
                s.push('\n');
                for &m in &self.rows {
                    s += &format!("| {m} |");
                    for &n in &self.cols {
                        s += &format!(" {} |", Self::text(self.cell(m, n).expect("rectangular")));
                    }
                    s.push('\n');
                }
                s
            }
            TableFormat::Csv => {
                let mut w = String::from("m,n,case,symbolic,group\n");
                for c in &self.cells {
                    let g = c.group.as_ref().map(|g| g.to_string()).unwrap_or_default();
                    w += &format!("{},{},{},{},{}\n", c.m, c.n, c.case, csv_field(&c.symbolic), csv_field(&g));
                }
                w
            }
            TableFormat::Json => serde_json::to_string_pretty(self)? + "\n",
        })
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layouts_agree_across_formats() {
        let z = CanonicalGroup::z();
        let d = CanonicalGroup::cyclic(2);
        let t = SqTable::build(1..=3, 1..=4, Some((&z, &d))).unwrap();
        let json: SqTable = serde_json::from_str(&t.render(TableFormat::Json).unwrap()).unwrap();
        assert_eq!(json, t);
        let csv = t.render(TableFormat::Csv).unwrap();
        assert_eq!(csv.lines().count(), 1 + 12);
        let md = t.render(TableFormat::Md).unwrap();
        assert_eq!(md.lines().count(), 2 + 4);
        assert_eq!(t.cell(1, 2).unwrap().symbolic, "ΓT#(A,D)");
    }
}
