//! Categorical schema and per-node profiles.
//!
//! Attribute values are interned into one global value space: value `k` of attribute
//! `j` gets id `offset[j] + k`, so equal strings under different attributes never
//! collide.

use std::collections::HashMap;
use std::io::{BufRead, Read, Write};

use rand::Rng;
use rand_distr::Exp1;

use crate::error::{AditumError, Result};
use crate::graph::{DiffusionGraph, NodeId};
use crate::rng::{self, Domain};

pub type ValueId = u32;

/// Ordered attributes with their value domains and mixing weights `ω_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Schema {
    names: Vec<String>,
    domains: Vec<Vec<String>>,
    offsets: Vec<u32>,
    weights: Vec<f64>,
    lookup: HashMap<(usize, String), ValueId>,
}

impl Schema {
    /// Schema with uniform weights `1/m`.
    pub fn new(attributes: Vec<(String, Vec<String>)>) -> Result<Self> {
        if attributes.is_empty() {
            return Err(AditumError::config("schema needs at least one attribute"));
        }
        let m = attributes.len();
        let mut names = Vec::with_capacity(m);
        let mut domains = Vec::with_capacity(m);
        let mut offsets = Vec::with_capacity(m);
        let mut lookup = HashMap::new();
        let mut next = 0u32;
        for (j, (name, values)) in attributes.into_iter().enumerate() {
            if names.contains(&name) {
                return Err(AditumError::format(format!("duplicate attribute `{name}`")));
            }
            offsets.push(next);
            for value in &values {
                if lookup.insert((j, value.clone()), next).is_some() {
                    return Err(AditumError::format(format!("duplicate value `{value}` in attribute `{name}`")));
                }
                next += 1;
            }
            names.push(name);
            domains.push(values);
        }
        Ok(Schema {
            names,
            domains,
            offsets,
            weights: vec![1.0 / m as f64; m],
            lookup,
        })
    }

    /// `m` attributes named `A1..Am`, attribute `j` holding values `1..=sizes[j]`.
    pub fn numbered(domain_sizes: &[usize]) -> Result<Self> {
        Self::new(
            domain_sizes
                .iter()
                .enumerate()
                .map(|(j, &n)| (format!("A{}", j + 1), (1..=n).map(|i| i.to_string()).collect()))
                .collect(),
        )
    }

    pub fn with_weights(mut self, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != self.names.len() {
            return Err(AditumError::config(format!(
                "{} attribute weights for {} attributes",
                weights.len(),
                self.names.len()
            )));
        }
        if weights.iter().any(|w| !(0.0..=1.0).contains(w)) {
            return Err(AditumError::config("attribute weights must lie in [0,1]"));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(AditumError::config(format!("attribute weights sum to {sum}, expected 1")));
        }
        self.weights = weights;
        Ok(self)
    }

    /// Reads `attribute value value ...` lines.
    pub fn read<R: BufRead>(reader: R) -> Result<Self> {
        let mut attributes = Vec::new();
        for line in reader.lines() {
            let line = line?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut fields = trimmed.split_whitespace();
            let name = fields.next().unwrap().to_string();
            attributes.push((name, fields.map(str::to_string).collect()));
        }
        Self::new(attributes)
    }

    pub fn write<W: Write>(&self, mut w: W) -> Result<()> {
        for (name, values) in self.names.iter().zip(&self.domains) {
            writeln!(w, "{} {}", name, values.join(" "))?;
        }
        Ok(())
    }

    pub fn attribute_count(&self) -> usize {
        self.names.len()
    }

    pub fn attribute_name(&self, j: usize) -> &str {
        &self.names[j]
    }

    pub fn attribute_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn domain_size(&self, j: usize) -> usize {
        self.domains[j].len()
    }

    pub fn domain_sizes(&self) -> Vec<usize> {
        self.domains.iter().map(Vec::len).collect()
    }

    /// `|dom|`, the number of declared values over all attributes.
    pub fn total_values(&self) -> usize {
        self.domains.iter().map(Vec::len).sum()
    }

    pub fn weight(&self, j: usize) -> f64 {
        self.weights[j]
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn value_id(&self, j: usize, value: &str) -> Option<ValueId> {
        self.lookup.get(&(j, value.to_string())).copied()
    }

    pub fn attribute_of(&self, value: ValueId) -> usize {
        match self.offsets.binary_search(&value) {
            Ok(mut j) => {
                // empty domains share an offset with their successor
                while j + 1 < self.offsets.len() && self.offsets[j + 1] == value {
                    j += 1;
                }
                j
            }
            Err(j) => j - 1,
        }
    }

    pub fn value_label(&self, value: ValueId) -> &str {
        let j = self.attribute_of(value);
        &self.domains[j][(value - self.offsets[j]) as usize]
    }
}

/// Per-node sparse categorical tuples over a [`Schema`].
#[derive(Debug, Clone, PartialEq)]
pub struct ProfileSet {
    schema: Schema,
    node_count: usize,
    cells: Vec<Option<ValueId>>,
    global_counts: Vec<u32>,
}

impl ProfileSet {
    /// Builds from per-node rows of length `m`, entries being values of the matching
    /// attribute's domain or `None` for missing.
    pub fn from_rows(schema: Schema, rows: Vec<Vec<Option<ValueId>>>) -> Result<Self> {
        let m = schema.attribute_count();
        let mut cells = Vec::with_capacity(rows.len() * m);
        for (v, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(AditumError::usage(format!("profile of node {v} has {} entries, expected {m}", row.len())));
            }
            for (j, cell) in row.iter().enumerate() {
                if let Some(a) = *cell {
                    let lo = schema.offsets[j];
                    if a < lo || a >= lo + schema.domain_size(j) as u32 {
                        return Err(AditumError::format(format!(
                            "value id {a} of node {v} outside domain of `{}`",
                            schema.names[j]
                        )));
                    }
                }
                cells.push(*cell);
            }
        }
        let mut global_counts = vec![0u32; schema.total_values()];
        for a in cells.iter().flatten() {
            global_counts[*a as usize] += 1;
        }
        Ok(ProfileSet {
            schema,
            node_count: rows.len(),
            cells,
            global_counts,
        })
    }

    /// Builds from string cells (`None` or empty string for missing).
    pub fn from_labels(schema: Schema, rows: &[Vec<Option<&str>>]) -> Result<Self> {
        let mut out = Vec::with_capacity(rows.len());
        for (v, row) in rows.iter().enumerate() {
            let mut ids = Vec::with_capacity(row.len());
            for (j, cell) in row.iter().enumerate() {
                ids.push(match cell {
                    None | Some("") => None,
                    Some(s) => Some(schema.value_id(j, s).ok_or_else(|| {
                        AditumError::format(format!("value `{s}` of node {v} not in domain of `{}`", schema.names[j]))
                    })?),
                });
            }
            out.push(ids);
        }
        Self::from_rows(schema, out)
    }

    /// Reads a profile CSV. The header names attributes; an optional leading `node`
    /// column keys rows by graph label (unlisted nodes get empty profiles), otherwise
    /// rows are taken in dense-id order. Empty cells are missing values.
    pub fn load_csv<R: Read>(reader: R, schema: Schema, graph: Option<&DiffusionGraph>) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
        let headers = csv.headers()?.clone();
        let keyed = headers.get(0) == Some("node");
        let first = usize::from(keyed);
        let mut columns = Vec::new();
        for h in headers.iter().skip(first) {
            let j = schema
                .attribute_index(h)
                .ok_or_else(|| AditumError::format_at(1, format!("unknown attribute column `{h}`")))?;
            if columns.contains(&j) {
                return Err(AditumError::format_at(1, format!("attribute column `{h}` repeated")));
            }
            columns.push(j);
        }
        let m = schema.attribute_count();
        let mut rows: Vec<Vec<Option<ValueId>>> = match (keyed, graph) {
            (true, Some(g)) => vec![vec![None; m]; g.node_count()],
            (true, None) => return Err(AditumError::usage("a `node` column needs a graph to resolve labels")),
            (false, _) => Vec::new(),
        };
        for (i, record) in csv.records().enumerate() {
            let record = record?;
            let lineno = i + 2;
            let mut row = vec![None; m];
            for (col, &j) in columns.iter().enumerate() {
                let cell = record.get(col + first).unwrap_or("").trim();
                if cell.is_empty() {
                    continue;
                }
                row[j] = Some(schema.value_id(j, cell).ok_or_else(|| {
                    AditumError::format_at(lineno, format!("value `{cell}` not in domain of `{}`", schema.names[j]))
                })?);
            }
            if keyed {
                let label = record.get(0).unwrap_or("").trim();
                let g = graph.expect("checked above");
                let v = g
                    .node_id(label)
                    .ok_or_else(|| AditumError::format_at(lineno, format!("unknown node `{label}`")))?;
                rows[v as usize] = row;
            } else {
                rows.push(row);
            }
        }
        if let (false, Some(g)) = (keyed, graph) {
            if rows.len() != g.node_count() {
                return Err(AditumError::format(format!(
                    "{} profile rows for {} graph nodes",
                    rows.len(),
                    g.node_count()
                )));
            }
        }
        Self::from_rows(schema, rows)
    }

    /// Infers a schema from the CSV (values sorted per attribute) and loads it.
    pub fn load_csv_inferred(text: &str, graph: Option<&DiffusionGraph>) -> Result<Self> {
        let mut csv = csv::ReaderBuilder::new().has_headers(true).from_reader(text.as_bytes());
        let headers = csv.headers()?.clone();
        let first = usize::from(headers.get(0) == Some("node"));
        let names: Vec<String> = headers.iter().skip(first).map(str::to_string).collect();
        let mut values: Vec<std::collections::BTreeSet<String>> = vec![Default::default(); names.len()];
        for record in csv.records() {
            let record = record?;
            for (j, set) in values.iter_mut().enumerate() {
                let cell = record.get(j + first).unwrap_or("").trim();
                if !cell.is_empty() {
                    set.insert(cell.to_string());
                }
            }
        }
        let schema = Schema::new(names.into_iter().zip(values.into_iter().map(|s| s.into_iter().collect())).collect())?;
        Self::load_csv(text.as_bytes(), schema, graph)
    }

    /// Writes a profile CSV. With a graph, a leading `node` column carries labels.
    pub fn write_csv<W: Write>(&self, writer: W, graph: Option<&DiffusionGraph>) -> Result<()> {
        let mut csv = csv::Writer::from_writer(writer);
        let mut header: Vec<&str> = Vec::new();
        if graph.is_some() {
            header.push("node");
        }
        header.extend(self.schema.names.iter().map(String::as_str));
        csv.write_record(&header)?;
        for v in 0..self.node_count {
            let mut row: Vec<&str> = Vec::with_capacity(header.len());
            if let Some(g) = graph {
                row.push(g.label(v as NodeId));
            }
            for cell in self.profile(v as NodeId) {
                row.push(cell.map(|a| self.schema.value_label(a)).unwrap_or(""));
            }
            csv.write_record(&row)?;
        }
        csv.flush()?;
        Ok(())
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// `𝒜[v]` as a dense row with `None` for missing attributes.
    pub fn profile(&self, v: NodeId) -> &[Option<ValueId>] {
        let m = self.schema.attribute_count();
        &self.cells[v as usize * m..(v as usize + 1) * m]
    }

    pub fn value(&self, v: NodeId, j: usize) -> Option<ValueId> {
        self.profile(v)[j]
    }

    /// Present values of `𝒜[v]` in attribute order.
    pub fn values(&self, v: NodeId) -> impl Iterator<Item = ValueId> + '_ {
        self.profile(v).iter().flatten().copied()
    }

    /// `|𝒜[v]|`.
    pub fn profile_len(&self, v: NodeId) -> usize {
        self.profile(v).iter().filter(|c| c.is_some()).count()
    }

    /// Occurrences of value `a` across all profiles.
    pub fn global_count(&self, a: ValueId) -> u32 {
        self.global_counts[a as usize]
    }

    pub fn global_counts(&self) -> &[u32] {
        &self.global_counts
    }
}

/// Value-index distribution for synthetic profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SynthDistribution {
    Uniform,
    /// `⌈e⌉` for `e ~ Exp(1)`, redrawn while outside the domain.
    Exponential,
}

impl std::str::FromStr for SynthDistribution {
    type Err = AditumError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "uniform" => Ok(SynthDistribution::Uniform),
            "exponential" | "exp" => Ok(SynthDistribution::Exponential),
            other => Err(AditumError::config(format!("unknown profile distribution `{other}`"))),
        }
    }
}

impl std::fmt::Display for SynthDistribution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            SynthDistribution::Uniform => "uniform",
            SynthDistribution::Exponential => "exponential",
        })
    }
}

fn draw_index<R: Rng>(rng: &mut R, size: usize, dist: SynthDistribution) -> usize {
    match dist {
        SynthDistribution::Uniform => rng.random_range(0..size),
        SynthDistribution::Exponential => loop {
            let e: f64 = rng.sample(Exp1);
            let idx = e.ceil() as usize;
            if (1..=size).contains(&idx) {
                break idx - 1;
            }
        },
    }
}

/// Synthetic full profiles: one value per attribute for every node, value `i` of
/// attribute `j` (1-based) drawn from `dist` over `1..=domain_sizes[j]`.
pub fn synth_profiles(
    node_count: usize,
    domain_sizes: &[usize],
    dist: SynthDistribution,
    seed: u64,
) -> Result<ProfileSet> {
    if domain_sizes.is_empty() || domain_sizes.contains(&0) {
        return Err(AditumError::config("synthetic profiles need m ≥ 1 and every n_i ≥ 1"));
    }
    let schema = Schema::numbered(domain_sizes)?;
    let rows = (0..node_count)
        .map(|v| {
            let mut rng = rng::stream(seed, Domain::Profiles, 0, v as u64);
            domain_sizes
                .iter()
                .enumerate()
                .map(|(j, &n)| Some(schema.offsets[j] + draw_index(&mut rng, n, dist) as u32))
                .collect()
        })
        .collect();
    ProfileSet::from_rows(schema, rows)
}

/// Reads a numeric CSV with a header row; an optional leading `node` column is
/// resolved against `graph`. Empty cells are `None`.
pub fn read_numeric_csv<R: Read>(
    reader: R,
    graph: Option<&DiffusionGraph>,
) -> Result<(Vec<String>, Vec<Vec<Option<f64>>>)> {
    let mut csv = csv::ReaderBuilder::new().has_headers(true).from_reader(reader);
    let headers = csv.headers()?.clone();
    let keyed = headers.get(0) == Some("node");
    let first = usize::from(keyed);
    let names: Vec<String> = headers.iter().skip(first).map(str::to_string).collect();
    let width = names.len();
    let mut rows: Vec<Vec<Option<f64>>> = match (keyed, graph) {
        (true, Some(g)) => vec![vec![None; width]; g.node_count()],
        (true, None) => return Err(AditumError::usage("a `node` column needs a graph to resolve labels")),
        (false, _) => Vec::new(),
    };
    for (i, record) in csv.records().enumerate() {
        let record = record?;
        let lineno = i + 2;
        let mut row = Vec::with_capacity(width);
        for j in 0..width {
            let cell = record.get(j + first).unwrap_or("").trim();
            row.push(if cell.is_empty() {
                None
            } else {
                Some(
                    cell.parse::<f64>()
                        .map_err(|_| AditumError::format_at(lineno, format!("unparsable number `{cell}`")))?,
                )
            });
        }
        if keyed {
            let label = record.get(0).unwrap_or("").trim();
            let v = graph
                .and_then(|g| g.node_id(label))
                .ok_or_else(|| AditumError::format_at(lineno, format!("unknown node `{label}`")))?;
            rows[v as usize] = row;
        } else {
            rows.push(row);
        }
    }
    Ok((names, rows))
}

/// Maps each numeric column onto bin labels `1..=bins` by empirical quantiles.
///
/// A value `x` lands in bin `⌊bins · #{y < x} / n⌋ + 1`, where `n` counts the finite
/// values of the column; equal values share a bin (the lower one). Missing or
/// non-finite cells stay missing.
pub fn quantile_discretize(names: &[String], matrix: &[Vec<Option<f64>>], bins: usize) -> Result<ProfileSet> {
    if bins < 2 {
        return Err(AditumError::config(format!("quantile binning needs at least 2 bins, got {bins}")));
    }
    let m = names.len();
    let labels: Vec<String> = (1..=bins).map(|i| i.to_string()).collect();
    let schema = Schema::new(names.iter().map(|n| (n.clone(), labels.clone())).collect())?;
    let mut rows = vec![vec![None; m]; matrix.len()];
    for j in 0..m {
        let mut column: Vec<f64> = matrix
            .iter()
            .filter_map(|r| r.get(j).copied().flatten())
            .filter(|x| x.is_finite())
            .collect();
        if column.is_empty() {
            return Err(AditumError::format(format!("attribute `{}` has no finite values", names[j])));
        }
        column.sort_by(f64::total_cmp);
        let n = column.len();
        for (v, row) in matrix.iter().enumerate() {
            let Some(x) = row.get(j).copied().flatten().filter(|x| x.is_finite()) else {
                continue;
            };
            let below = column.partition_point(|&y| y < x);
            let bin = (bins * below / n).min(bins - 1);
            rows[v][j] = Some(schema.offsets[j] + bin as u32);
        }
    }
    ProfileSet::from_rows(schema, rows)
}

/// Per-node preference vectors `ω_u ∈ [0,1]^M`: each row divided by its maximum.
/// Rows of zeros stay zero.
pub fn derive_numeric_preferences(matrix: &[Vec<f64>]) -> Result<Vec<Vec<f64>>> {
    matrix
        .iter()
        .enumerate()
        .map(|(v, row)| {
            if let Some(x) = row.iter().find(|x| !(**x >= 0.0 && x.is_finite())) {
                return Err(AditumError::format(format!("preference {x} of row {v} must be a non-negative number")));
            }
            let max = row.iter().copied().fold(0.0, f64::max);
            Ok(if max > 0.0 {
                row.iter().map(|x| x / max).collect()
            } else {
                row.clone()
            })
        })
        .collect()
}

/// Node → class assignment with per-node selection rewards.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassMap {
    pub class_of: Vec<Option<u32>>,
    pub rewards: Vec<f64>,
    pub class_names: Vec<String>,
}

impl ClassMap {
    /// Dense assignment with unit rewards.
    pub fn from_assignment(class_of: Vec<u32>) -> Self {
        let h = class_of.iter().copied().max().map_or(0, |c| c + 1);
        ClassMap {
            rewards: vec![1.0; class_of.len()],
            class_of: class_of.into_iter().map(Some).collect(),
            class_names: (0..h).map(|c| c.to_string()).collect(),
        }
    }

    /// Reads `node class [reward]` lines; rewards default to 1 and must be positive.
    pub fn load<R: BufRead>(reader: R, graph: &DiffusionGraph) -> Result<Self> {
        let n = graph.node_count();
        let mut class_of = vec![None; n];
        let mut rewards = vec![1.0; n];
        let mut names: Vec<String> = Vec::new();
        let mut ids: HashMap<String, u32> = HashMap::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let lineno = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if !(2..=3).contains(&fields.len()) {
                return Err(AditumError::format_at(lineno, "class line must be `node class [reward]`"));
            }
            let v = graph
                .node_id(fields[0])
                .ok_or_else(|| AditumError::format_at(lineno, format!("unknown node `{}`", fields[0])))?;
            let next = names.len() as u32;
            let c = *ids.entry(fields[1].to_string()).or_insert_with(|| {
                names.push(fields[1].to_string());
                next
            });
            if class_of[v as usize].replace(c).is_some() {
                return Err(AditumError::format_at(lineno, format!("node `{}` assigned twice", fields[0])));
            }
            if let Some(r) = fields.get(2) {
                let r: f64 = r
                    .parse()
                    .map_err(|_| AditumError::format_at(lineno, format!("unparsable reward `{r}`")))?;
                if !(r > 0.0 && r.is_finite()) {
                    return Err(AditumError::format_at(lineno, format!("reward {r} must be positive")));
                }
                rewards[v as usize] = r;
            }
        }
        Ok(ClassMap {
            class_of,
            rewards,
            class_names: names,
        })
    }

    pub fn class_count(&self) -> usize {
        self.class_names.len()
    }
}
