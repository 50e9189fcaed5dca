//! Tables and census reports for the right Bol loops of order 27.

use crate::classify::{are_isomorphic, up_to_isomorphism};
use crate::constructions::{bol_loop, cyclic_group, elementary_abelian_square};
use crate::error::Result;
use crate::invariants::{
    center, derived_subloop, identify_in_catalog, is_centrally_nilpotent, left_nucleus, profile,
    right_multiplication_group, InvariantProfile,
};
use crate::search::{
    central_extensions_in_variety, model_search_with, SearchOptions, SearchSpec, SubloopCase,
};
use crate::table::LoopTable;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write;

fn bol_loops() -> Vec<LoopTable> {
    (1..=10).map(|i| bol_loop(i).expect("catalog loop")).collect()
}

fn render_grid(header: &[String], rows: &[(String, Vec<String>)]) -> String {
    let label_w = rows.iter().map(|(l, _)| l.chars().count()).max().unwrap_or(0).max(1);
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for (_, cells) in rows {
        for (w, c) in widths.iter_mut().zip(cells) {
            *w = (*w).max(c.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, label: &str, cells: &[String]| {
        let pad = label_w - label.chars().count();
        out.push_str(label);
        out.push_str(&" ".repeat(pad));
        for (c, w) in cells.iter().zip(&widths) {
            write!(out, "  {c:>w$}").unwrap();
        }
        out.push('\n');
    };
    line(&mut out, "Q", header);
    for (label, cells) in rows {
        line(&mut out, label, cells);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1Column {
    pub name: String,
    #[serde(flatten)]
    pub profile: InvariantProfile,
}

/// Invariants of the ten nonassociative right Bol loops of order 27.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table1 {
    pub columns: Vec<Table1Column>,
}

pub fn table1() -> Result<Table1> {
    let columns = bol_loops()
        .par_iter()
        .enumerate()
        .map(|(i, q)| {
            Ok(Table1Column {
                name: format!("B{}", i + 1),
                profile: profile(q)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Table1 { columns })
}

impl Table1 {
    /// Row labels and cells, in the published row order.
    pub fn rows(&self) -> Vec<(String, Vec<String>)> {
        let row = |label: &str, f: &dyn Fn(&InvariantProfile) -> String| {
            (label.to_string(), self.columns.iter().map(|c| f(&c.profile)).collect())
        };
        let yes_no = |b: bool| if b { "yes" } else { "no" }.to_string();
        vec![
            row("|Z(Q)|", &|p| p.center_order.to_string()),
            row("exp Q", &|p| p.exponent.to_string()),
            row("#{x : |x| = 3}", &|p| p.order3_count.to_string()),
            row("|Q'|", &|p| p.derived_order.to_string()),
            row("|Nl(Q)|", &|p| p.left_nucleus_order.to_string()),
            row("exp Nl(Q)", &|p| p.left_nucleus_exponent.to_string()),
            row("#{(x,y) : xy = yx}", &|p| p.commuting_pairs.to_string()),
            row("|RMlt(Q)|", &|p| p.rmlt_order.to_string()),
            row("|LMlt(Q)|", &|p| p.lmlt_order.to_string()),
            row("|Mlt(Q)|", &|p| p.mlt_order.to_string()),
            row("|Aut(Q)|", &|p| p.aut_order.to_string()),
            row("right Bruck?", &|p| yes_no(p.is_right_bruck)),
            row("associated right Bruck", &|p| {
                p.associated_bruck.clone().unwrap_or_else(|| "-".into())
            }),
        ]
    }

    pub fn render(&self) -> String {
        let header: Vec<String> = self.columns.iter().map(|c| c.name.clone()).collect();
        render_grid(&header, &self.rows())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2Column {
    pub name: String,
    pub order: u128,
    pub exponent: usize,
    pub center_order: usize,
    /// Columns with equal labels have isomorphic right multiplication groups.
    pub rmlt_class: usize,
}

/// Right multiplication groups of the ten nonassociative loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Table2 {
    pub columns: Vec<Table2Column>,
}

pub fn table2() -> Result<Table2> {
    let groups: Vec<(u128, usize, usize, LoopTable)> = bol_loops()
        .par_iter()
        .map(|q| {
            let g = right_multiplication_group(q);
            Ok((g.order(), g.exponent()?, g.center_order()?, g.cayley_table()?))
        })
        .collect::<Result<Vec<_>>>()?;
    let tables: Vec<LoopTable> = groups.iter().map(|g| g.3.clone()).collect();
    let classes = up_to_isomorphism(&tables);
    let columns = groups
        .into_iter()
        .enumerate()
        .map(|(i, (order, exponent, center_order, _))| Table2Column {
            name: format!("B{}", i + 1),
            order,
            exponent,
            center_order,
            rmlt_class: classes.class_of[i] + 1,
        })
        .collect();
    Ok(Table2 { columns })
}

impl Table2 {
    /// Loops grouped by the isomorphism type of their right multiplication
    /// group, in order of first appearance.
    pub fn groups(&self) -> Vec<Vec<String>> {
        let k = self.columns.iter().map(|c| c.rmlt_class).max().unwrap_or(0);
        (1..=k)
            .map(|cls| {
                self.columns
                    .iter()
                    .filter(|c| c.rmlt_class == cls)
                    .map(|c| c.name.clone())
                    .collect()
            })
            .collect()
    }

    pub fn render(&self) -> String {
        let header: Vec<String> = self.columns.iter().map(|c| c.name.clone()).collect();
        let col = |f: &dyn Fn(&Table2Column) -> String| self.columns.iter().map(f).collect();
        let rows = vec![
            ("|G|".to_string(), col(&|c| c.order.to_string())),
            ("exp G".to_string(), col(&|c| c.exponent.to_string())),
            ("|Z(G)|".to_string(), col(&|c| c.center_order.to_string())),
            ("type of G".to_string(), col(&|c| format!("G{}", c.rmlt_class))),
        ];
        let mut out = String::from("G = RMlt(Q)\n");
        out.push_str(&render_grid(&header, &rows));
        for (i, g) in self.groups().iter().enumerate() {
            writeln!(out, "G{}: {}", i + 1, g.join(", ")).unwrap();
        }
        out
    }
}

/// Coverage facts for one loop found by the trivial-center search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoverageEntry {
    pub name: String,
    pub center_order: usize,
    pub derived_order: usize,
    /// `|Q' ∩ Nl(Q)|`.
    pub derived_left_nuclear: usize,
    /// `"elementary abelian"` or `"cyclic"` when `|Q'| = 9`.
    pub derived_type: Option<String>,
    pub ok: bool,
}

/// Checks, for every loop with trivial center, that `|Q'| = 9`, that `Q'`
/// meets the left nucleus nontrivially, and that `Q'` is one of the two
/// groups of order 9. Loops with nontrivial center pass trivially.
pub fn trivial_center_coverage(loops: &[(String, LoopTable)]) -> Vec<CoverageEntry> {
    loops
        .iter()
        .map(|(name, q)| {
            let z = center(q).len();
            let d = derived_subloop(q);
            let nl = left_nucleus(q);
            let meet = d.intersection(&nl).len();
            let dtype = (d.len() == 9).then(|| {
                let dq = d.as_loop(q);
                let kind = if dq.exponent().ok() == Some(9) { "cyclic" } else { "elementary abelian" };
                kind.to_string()
            });
            let ok = z > 1 || (d.len() == 9 && meet > 1);
            CoverageEntry {
                name: name.clone(),
                center_order: z,
                derived_order: d.len(),
                derived_left_nuclear: meet,
                derived_type: dtype,
                ok,
            }
        })
        .collect()
}

/// One isomorphism class of the census.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusClass {
    /// Catalog name, `"?"` if unrecognized.
    pub name: String,
    /// Where the first representative came from.
    pub source: String,
    pub associative: bool,
    pub commutative: bool,
    pub center_order: usize,
    pub centrally_nilpotent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub extension_classes: usize,
    pub ea_models: usize,
    pub ea_classes: usize,
    pub cyclic_models: usize,
    pub cyclic_classes: usize,
    pub classes: Vec<CensusClass>,
    pub coverage: Vec<CoverageEntry>,
}

impl Census {
    pub fn total(&self) -> usize {
        self.classes.len()
    }

    pub fn associative(&self) -> usize {
        self.classes.iter().filter(|c| c.associative).count()
    }

    pub fn abelian(&self) -> usize {
        self.classes.iter().filter(|c| c.associative && c.commutative).count()
    }

    pub fn centrally_nilpotent(&self) -> usize {
        self.classes.iter().filter(|c| c.centrally_nilpotent).count()
    }

    pub fn trivial_center(&self) -> usize {
        self.classes.iter().filter(|c| c.center_order == 1).count()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "central extensions of Z3 by Z3 x Z3: {} classes", self.extension_classes).unwrap();
        writeln!(
            out,
            "trivial-center search, M = Z3 x Z3: {} models, {} classes",
            self.ea_models, self.ea_classes
        )
        .unwrap();
        writeln!(
            out,
            "trivial-center search, M = Z9: {} models, {} classes",
            self.cyclic_models, self.cyclic_classes
        )
        .unwrap();
        let header: Vec<String> = ["source", "assoc", "comm", "|Z|", "nilpotent"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let yn = |b: bool| if b { "yes" } else { "no" }.to_string();
        let rows: Vec<(String, Vec<String>)> = self
            .classes
            .iter()
            .map(|c| {
                (
                    c.name.clone(),
                    vec![
                        c.source.clone(),
                        yn(c.associative),
                        yn(c.commutative),
                        c.center_order.to_string(),
                        yn(c.centrally_nilpotent),
                    ],
                )
            })
            .collect();
        out.push_str(&render_grid(&header, &rows));
        for e in &self.coverage {
            if e.center_order == 1 {
                writeln!(
                    out,
                    "coverage {}: |Q'| = {} ({}), |Q' ∩ Nl| = {}: {}",
                    e.name,
                    e.derived_order,
                    e.derived_type.as_deref().unwrap_or("-"),
                    e.derived_left_nuclear,
                    if e.ok { "ok" } else { "FAILED" }
                )
                .unwrap();
            }
        }
        writeln!(
            out,
            "total {}, associative {}, abelian {}, centrally nilpotent {}, trivial center {}",
            self.total(),
            self.associative(),
            self.abelian(),
            self.centrally_nilpotent(),
            self.trivial_center()
        )
        .unwrap();
        out
    }
}

/// Runs both searches, adds `Z_27`, and reduces everything modulo
/// isomorphism.
pub fn classify_all(opts: &SearchOptions) -> Result<Census> {
    let extensions = central_extensions_in_variety(3, &elementary_abelian_square(3))?;
    let ea = model_search_with(&SearchSpec::trivial_center(SubloopCase::ElementaryAbelian), opts)?;
    let cyc = model_search_with(&SearchSpec::trivial_center(SubloopCase::Cyclic), opts)?;
    let ea_classes = up_to_isomorphism(&ea.models).representatives.len();
    let cyc_classes = up_to_isomorphism(&cyc.models).representatives.len();

    let mut all: Vec<(String, LoopTable)> = Vec::new();
    all.extend(extensions.iter().map(|q| ("extension".to_string(), q.clone())));
    all.extend(ea.models.iter().map(|q| ("search ea".to_string(), q.clone())));
    all.extend(cyc.models.iter().map(|q| ("search cyc".to_string(), q.clone())));
    all.push(("cyclic group".to_string(), cyclic_group(27)));
    let tables: Vec<LoopTable> = all.iter().map(|(_, q)| q.clone()).collect();
    let reps = up_to_isomorphism(&tables).representatives;

    let classes: Vec<CensusClass> = reps
        .par_iter()
        .map(|&i| {
            let (source, q) = &all[i];
            CensusClass {
                name: identify_in_catalog(q).unwrap_or("?").to_string(),
                source: source.clone(),
                associative: q.is_associative(),
                commutative: q.is_commutative(),
                center_order: center(q).len(),
                centrally_nilpotent: is_centrally_nilpotent(q),
            }
        })
        .collect();
    let found: Vec<(String, LoopTable)> = reps
        .iter()
        .zip(&classes)
        .filter(|(&i, _)| all[i].0.starts_with("search"))
        .map(|(&i, c)| (c.name.clone(), all[i].1.clone()))
        .collect();
    Ok(Census {
        extension_classes: extensions.len(),
        ea_models: ea.models.len(),
        ea_classes,
        cyclic_models: cyc.models.len(),
        cyclic_classes: cyc_classes,
        classes,
        coverage: trivial_center_coverage(&found),
    })
}

/// Whether two loops have isomorphic right multiplication groups.
pub fn rmlt_isomorphic(a: &LoopTable, b: &LoopTable) -> Result<bool> {
    let ga = right_multiplication_group(a);
    let gb = right_multiplication_group(b);
    if ga.order() != gb.order() {
        return Ok(false);
    }
    Ok(are_isomorphic(&ga.cayley_table()?, &gb.cayley_table()?).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_alignment() {
        let out = render_grid(
            &["a".into(), "bb".into()],
            &[("row".into(), vec!["10".into(), "1".into()])],
        );
        assert_eq!(out, "Q     a  bb\nrow  10   1\n");
    }

    #[test]
    fn coverage_of_trivial_center_loops() {
        let loops = vec![
            ("B9".to_string(), bol_loop(9).unwrap()),
            ("B10".to_string(), bol_loop(10).unwrap()),
            ("Z27".to_string(), cyclic_group(27)),
        ];
        let cov = trivial_center_coverage(&loops);
        assert!(cov.iter().all(|e| e.ok));
        assert_eq!(cov[0].derived_order, 9);
        assert!(cov[0].derived_left_nuclear >= 3);
        assert!(cov[1].derived_left_nuclear >= 3);
        assert_eq!(cov[2].center_order, 27);
    }
}
