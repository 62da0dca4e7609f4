//! Datum files: one `datum <name> zz=<int> zk=<int> pg=<int> h1=<int>[,<int>...]`
//! per line, `#` starts a comment.

use super::NumericalIdealDatum;
use crate::ParseError;

#[derive(Debug, Clone)]
pub struct DatumFile {
    pub data: Vec<NumericalIdealDatum>,
}

impl DatumFile {
    pub fn get(&self, name: &str) -> Option<&NumericalIdealDatum> {
        self.data.iter().find(|d| d.label() == Some(name))
    }
}

pub fn parse_datum_file(text: &str) -> Result<DatumFile, ParseError> {
    let mut data = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens[0] != "datum" {
            return Err(ParseError::new(
                line,
                format!("unknown directive `{}`", tokens[0]),
            ));
        }
        let name = tokens
            .get(1)
            .filter(|t| !t.contains('='))
            .ok_or_else(|| ParseError::new(line, "datum needs a name"))?;
        let (mut zz, mut zk, mut pg, mut h1) = (None, None, None, None);
        for t in &tokens[2..] {
            let int = |v: &str| {
                v.parse::<i64>()
                    .map_err(|_| ParseError::new(line, format!("invalid integer `{v}` in `{t}`")))
            };
            match t.split_once('=') {
                Some(("zz", v)) => zz = Some(int(v)?),
                Some(("zk", v)) => zk = Some(int(v)?),
                Some(("pg", v)) => pg = Some(int(v)?),
                Some(("h1", v)) => h1 = Some(v.split(',').map(int).collect::<Result<Vec<_>, _>>()?),
                _ => return Err(ParseError::new(line, format!("unknown key `{t}`"))),
            }
        }
        let missing = |key: &str| ParseError::new(line, format!("missing `{key}=`"));
        let datum = NumericalIdealDatum::new(
            zz.ok_or_else(|| missing("zz"))?,
            zk.ok_or_else(|| missing("zk"))?,
            pg.ok_or_else(|| missing("pg"))?,
            h1.ok_or_else(|| missing("h1"))?,
        )
        .map_err(|e| ParseError::new(line, e.to_string()))?
        .with_label(*name);
        data.push(datum);
    }
    Ok(DatumFile { data })
}
