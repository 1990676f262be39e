use serde_json::{json, Map, Value as Json};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Text(String),
    /// Exact symbolic value with a decimal approximation.
    Num { exact: String, decimal: f64 },
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Cell {
        Cell::Text(s.into())
    }

    pub fn value(v: &asyminv::engine::Value) -> Cell {
        Cell::Num {
            exact: v.to_string(),
            decimal: v.to_f64(),
        }
    }

    pub fn rat(r: &asyminv::Rat) -> Cell {
        Cell::Num {
            exact: r.to_string(),
            decimal: asyminv::scalar::rat_to_f64(r),
        }
    }

    pub fn shown(&self) -> &str {
        match self {
            Cell::Text(s) => s,
            Cell::Num { exact, .. } => exact,
        }
    }

    fn to_json(&self) -> Json {
        match self {
            Cell::Text(s) => Json::String(s.clone()),
            Cell::Num { exact, decimal } => json!({ "exact": exact, "decimal": decimal }),
        }
    }

    fn from_json(v: &Json) -> Option<Cell> {
        match v {
            Json::String(s) => Some(Cell::Text(s.clone())),
            Json::Object(o) => Some(Cell::Num {
                exact: o.get("exact")?.as_str()?.to_string(),
                decimal: o.get("decimal")?.as_f64()?,
            }),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render_table(&self) -> String {
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|c| {
                self.rows
                    .iter()
                    .map(|r| r[c].shown().len())
                    .chain(std::iter::once(self.columns[c].len()))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: Vec<&str>| {
            cells
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:<w$}"))
                .collect::<Vec<_>>()
                .join("  ")
                .trim_end()
                .to_string()
        };
        let mut out = line(self.columns.iter().map(String::as_str).collect());
        out.push('\n');
        for r in &self.rows {
            out.push_str(&line(r.iter().map(Cell::shown).collect()));
            out.push('\n');
        }
        out
    }

    pub fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r.iter().map(Cell::shown)).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    pub fn to_json(&self) -> Json {
        json!({
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Json) -> Option<Table> {
        let columns = v
            .get("columns")?
            .as_array()?
            .iter()
            .map(|c| c.as_str().map(str::to_string))
            .collect::<Option<Vec<_>>>()?;
        let rows = v
            .get("rows")?
            .as_array()?
            .iter()
            .map(|r| r.as_array()?.iter().map(Cell::from_json).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()?;
        Some(Table { columns, rows })
    }
}

/// What a command produced: a table, free-form lines, and whether every
/// assertion held.
#[derive(Debug, Default)]
pub struct Report {
    pub command: String,
    /// Replaces the table in `table` format when set.
    pub plain: Option<String>,
    pub table: Table,
    pub notes: Vec<String>,
    pub extra: Map<String, Json>,
    pub pass: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

impl Report {
    pub fn new(command: &str, table: Table) -> Report {
        Report {
            command: command.to_string(),
            table,
            pass: true,
            ..Default::default()
        }
    }

    /// Reads a report back from its JSON rendering.
    pub fn from_json(v: &Json) -> Option<Report> {
        let mut extra = v.as_object()?.clone();
        let command = extra.remove("command")?.as_str()?.to_string();
        let pass = extra.remove("pass")?.as_bool()?;
        let table = Table::from_json(&extra.remove("table")?)?;
        let notes = extra
            .remove("notes")?
            .as_array()?
            .iter()
            .map(|n| n.as_str().map(str::to_string))
            .collect::<Option<Vec<_>>>()?;
        Some(Report {
            command,
            plain: None,
            table,
            notes,
            extra,
            pass,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => {
                let mut out = match &self.plain {
                    Some(p) => format!("{p}\n"),
                    None => self.table.render_table(),
                };
                for n in &self.notes {
                    out.push_str(n);
                    out.push('\n');
                }
                out
            }
            Format::Csv => self.table.render_csv(),
            Format::Json => {
                let mut m = Map::new();
                m.insert("command".into(), json!(self.command));
                m.insert("pass".into(), json!(self.pass));
                m.insert("table".into(), self.table.to_json());
                m.insert("notes".into(), json!(self.notes));
                for (k, v) in &self.extra {
                    m.insert(k.clone(), v.clone());
                }
                let mut s = serde_json::to_string_pretty(&Json::Object(m)).expect("json");
                s.push('\n');
                s
            }
        }
    }
}
