//! Report documents: a stable JSON schema plus deterministic text rendering.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use corefact::chartab::CharTable;
use corefact::cyclo::Cyc;
use corefact::perm::Group;
use corefact::structure::StructReport;
use corefact::theorems::HarnessReport;

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ReportDoc {
    pub command: String,
    pub version: String,
    pub payload: Payload,
    pub exit_code: i32,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Payload {
    Info(InfoPayload),
    Chartab(TablePayload),
    Vanishing(VanishingPayload),
    CheckCore(CheckCorePayload),
    Permutability(PermutabilityPayload),
    Verify(VerifyPayload),
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PrimeInfo {
    pub sylow_order: usize,
    pub o_p_order: usize,
    pub o_pprime_order: usize,
    pub is_p_nilpotent: bool,
    pub is_p_soluble: bool,
    pub p_length: Option<usize>,
    pub is_p_supersoluble: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct InfoPayload {
    pub name: String,
    pub degree: usize,
    pub order: usize,
    pub class_count: usize,
    pub exponent: u64,
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub is_soluble: bool,
    pub is_supersoluble: bool,
    pub center_order: usize,
    pub derived_order: usize,
    pub fitting_order: usize,
    pub fitting2_order: usize,
    pub primes: BTreeMap<u64, PrimeInfo>,
    pub factorisation_count: usize,
    pub tags: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassColumn {
    pub rep: String,
    pub size: usize,
    pub element_order: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TableRow {
    pub degree: u64,
    pub values: Vec<Cyc>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct TablePayload {
    pub name: String,
    pub order: usize,
    pub exponent: u64,
    pub classes: Vec<ClassColumn>,
    pub rows: Vec<TableRow>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VanishingClassReport {
    pub rep: String,
    /// i_G(x): the class size.
    pub index: usize,
    pub element_order: u64,
    pub vanishing: bool,
    pub prime_power_order: bool,
    /// Primes dividing |G| for which the class elements are p-regular.
    pub regular_for: Vec<u64>,
    /// Rows of the character table vanishing on this class.
    pub witnesses: Vec<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct VanishingPayload {
    pub name: String,
    pub order: usize,
    pub classes: Vec<VanishingClassReport>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SubgroupReport {
    pub order: usize,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct WitnessTerm {
    pub order: usize,
    pub generators: Vec<String>,
    pub label: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CheckCorePayload {
    pub name: String,
    pub fact_index: usize,
    pub a_order: usize,
    pub b_order: usize,
    pub holds: bool,
    pub failing_k: Option<SubgroupReport>,
    pub witness: Option<Vec<WitnessTerm>>,
    /// Covered minimal normal subgroups available at each greedy stage.
    pub alternatives: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PermutabilityPayload {
    pub name: String,
    pub fact_index: usize,
    pub mutual: bool,
    pub total: bool,
    pub tcc: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct VerifyPayload {
    pub selection: Vec<String>,
    pub audit: bool,
    pub entries: Vec<String>,
    pub report: HarnessReport,
}

pub fn subgroup_report(g: &Group) -> SubgroupReport {
    SubgroupReport {
        order: g.order(),
        generators: g.generators().iter().map(|p| p.to_string()).collect(),
    }
}

pub fn info_payload(
    name: &str,
    tags: &[String],
    group: &std::sync::Arc<Group>,
    report: &StructReport,
    factorisation_count: usize,
) -> InfoPayload {
    let classes = group.conjugacy_classes();
    InfoPayload {
        name: name.to_string(),
        degree: group.degree(),
        order: group.order(),
        class_count: classes.class_count(),
        exponent: classes.exponent,
        is_abelian: report.is_abelian,
        is_nilpotent: report.is_nilpotent,
        is_soluble: report.is_soluble,
        is_supersoluble: report.is_supersoluble,
        center_order: report.center.order(),
        derived_order: report.derived.order(),
        fitting_order: report.fitting.order(),
        fitting2_order: report.fitting2.order(),
        primes: report
            .per_prime
            .iter()
            .map(|(&p, pr)| {
                (
                    p,
                    PrimeInfo {
                        sylow_order: pr.sylow.order(),
                        o_p_order: pr.o_p.order(),
                        o_pprime_order: pr.o_pprime.order(),
                        is_p_nilpotent: pr.is_p_nilpotent,
                        is_p_soluble: pr.is_p_soluble,
                        p_length: pr.p_length,
                        is_p_supersoluble: pr.is_p_supersoluble,
                    },
                )
            })
            .collect(),
        factorisation_count,
        tags: tags.to_vec(),
    }
}

pub fn table_payload(name: &str, group: &Group, table: &CharTable) -> TablePayload {
    TablePayload {
        name: name.to_string(),
        order: group.order(),
        exponent: table.exponent,
        classes: table
            .classes
            .reps
            .iter()
            .zip(&table.classes.sizes)
            .map(|(rep, &size)| ClassColumn {
                rep: rep.to_string(),
                size,
                element_order: rep.order(),
            })
            .collect(),
        rows: table
            .values
            .iter()
            .zip(&table.degrees)
            .map(|(values, &degree)| TableRow {
                degree,
                values: values.clone(),
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Text rendering. Everything is fixed-width and sourced from sorted data, so
// repeated runs emit identical bytes.
// ---------------------------------------------------------------------------

fn pad(s: &str, width: usize) -> String {
    format!("{s:>width$}")
}

pub fn render_text(doc: &ReportDoc) -> String {
    let mut out = String::new();
    match &doc.payload {
        Payload::Info(p) => render_info(&mut out, p),
        Payload::Chartab(p) => render_table(&mut out, p),
        Payload::Vanishing(p) => render_vanishing(&mut out, p),
        Payload::CheckCore(p) => render_check_core(&mut out, p),
        Payload::Permutability(p) => render_permutability(&mut out, p),
        Payload::Verify(p) => render_verify(&mut out, p),
    }
    out
}

fn render_info(out: &mut String, p: &InfoPayload) {
    out.push_str(&format!(
        "{}: order {} on {} points, {} classes, exponent {}\n",
        p.name, p.order, p.degree, p.class_count, p.exponent
    ));
    out.push_str(&format!(
        "  abelian={} nilpotent={} soluble={} supersoluble={}\n",
        p.is_abelian, p.is_nilpotent, p.is_soluble, p.is_supersoluble
    ));
    out.push_str(&format!(
        "  |Z(G)|={} |G'|={} |F(G)|={} |F2(G)|={}\n",
        p.center_order, p.derived_order, p.fitting_order, p.fitting2_order
    ));
    for (prime, info) in &p.primes {
        out.push_str(&format!(
            "  p={prime}: |Syl_p|={} |O_p|={} |O_p'|={} p-nilpotent={} p-soluble={} p-length={} p-supersoluble={}\n",
            info.sylow_order,
            info.o_p_order,
            info.o_pprime_order,
            info.is_p_nilpotent,
            info.is_p_soluble,
            info.p_length.map_or("-".to_string(), |l| l.to_string()),
            info.is_p_supersoluble
        ));
    }
    if !p.tags.is_empty() {
        out.push_str(&format!("  tags: {}\n", p.tags.join(", ")));
    }
    out.push_str(&format!("  declared factorisations: {}\n", p.factorisation_count));
}

fn render_table(out: &mut String, p: &TablePayload) {
    out.push_str(&format!(
        "character table of {} (order {}, exponent {})\n",
        p.name, p.order, p.exponent
    ));
    let mut cells: Vec<Vec<String>> = Vec::new();
    let mut header_rep = vec!["rep".to_string()];
    header_rep.extend(p.classes.iter().map(|c| c.rep.clone()));
    let mut header_size = vec!["size".to_string()];
    header_size.extend(p.classes.iter().map(|c| c.size.to_string()));
    cells.push(header_rep);
    cells.push(header_size);
    for (i, row) in p.rows.iter().enumerate() {
        let mut line = vec![format!("X.{}", i + 1)];
        line.extend(row.values.iter().map(|v| v.to_string()));
        cells.push(line);
    }
    let columns = cells[0].len();
    let widths: Vec<usize> = (0..columns)
        .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(0))
        .collect();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .enumerate()
            .map(|(c, cell)| pad(cell, widths[c]))
            .collect();
        out.push_str(&line.join("  "));
        out.push('\n');
    }
}

fn render_vanishing(out: &mut String, p: &VanishingPayload) {
    out.push_str(&format!("vanishing classes of {} (order {})\n", p.name, p.order));
    out.push_str("  class rep         index  order  vanishing  ppo    regular-for\n");
    for c in &p.classes {
        out.push_str(&format!(
            "  {:<16} {:>6} {:>6}  {:<9}  {:<5}  {}\n",
            c.rep,
            c.index,
            c.element_order,
            c.vanishing,
            c.prime_power_order,
            if c.regular_for.is_empty() {
                "-".to_string()
            } else {
                c.regular_for
                    .iter()
                    .map(|q| q.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        ));
    }
}

fn render_check_core(out: &mut String, p: &CheckCorePayload) {
    out.push_str(&format!(
        "{} factorisation {}: |A|={} |B|={}\n",
        p.name, p.fact_index, p.a_order, p.b_order
    ));
    out.push_str(&format!(
        "core-factorisation: {}\n",
        if p.holds { "yes" } else { "no" }
    ));
    if let Some(k) = &p.failing_k {
        out.push_str(&format!(
            "failing K: order {} = <{}>\n",
            k.order,
            k.generators.join(", ")
        ));
    }
    if let Some(witness) = &p.witness {
        out.push_str("witness series (term order, generators, covered by):\n");
        for term in witness {
            out.push_str(&format!(
                "  order {:>6}  <{}>  covered by {}\n",
                term.order,
                term.generators.join(", "),
                term.label
            ));
        }
    }
    if let Some(alts) = &p.alternatives {
        out.push_str(&format!(
            "covered minimal normal subgroups per stage: {}\n",
            alts.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(", ")
        ));
    }
}

fn render_permutability(out: &mut String, p: &PermutabilityPayload) {
    out.push_str(&format!(
        "{} factorisation {}: mutual={} total={} tcc={}\n",
        p.name, p.fact_index, p.mutual, p.total, p.tcc
    ));
}

fn render_verify(out: &mut String, p: &VerifyPayload) {
    out.push_str(&format!(
        "verify: {} theorems over {} instances (audit={})\n",
        p.selection.len(),
        p.entries.len(),
        p.audit
    ));
    for o in &p.report.outcomes {
        let conclusion = match o.conclusion_holds {
            None => "skipped".to_string(),
            Some(true) => "ok".to_string(),
            Some(false) => {
                if o.hypothesis_holds {
                    "FAILED".to_string()
                } else {
                    "no (hypothesis false)".to_string()
                }
            }
        };
        out.push_str(&format!(
            "  {:<6} {:<24} {:<14} hyp={:<5} conclusion={}\n",
            o.theorem,
            o.instance,
            o.params,
            o.hypothesis_holds,
            conclusion
        ));
        if o.conclusion_holds == Some(false) {
            for c in &o.subclauses {
                if !c.holds {
                    out.push_str(&format!("         violated: {}\n", c.name));
                }
            }
        }
    }
    out.push_str("coverage (outcomes with a true hypothesis):\n");
    for (id, count) in &p.report.coverage {
        out.push_str(&format!("  {id:<6} {count}\n"));
    }
    out.push_str(&format!(
        "failures: {}\n",
        if p.report.failures.is_empty() {
            "none".to_string()
        } else {
            p.report
                .failures
                .iter()
                .map(|i| i.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        }
    ));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip() {
        let doc = ReportDoc {
            command: "permutability example-2.4 --fact 0".into(),
            version: "0.1.0".into(),
            payload: Payload::Permutability(PermutabilityPayload {
                name: "example-2.4".into(),
                fact_index: 0,
                mutual: false,
                total: false,
                tcc: false,
            }),
            exit_code: 0,
        };
        let json = serde_json::to_string_pretty(&doc).unwrap();
        let back: ReportDoc = serde_json::from_str(&json).unwrap();
        assert_eq!(doc, back);
    }
}
