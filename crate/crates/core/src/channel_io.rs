//! Plain-text channel files.
//!
//! ```text
//! idx,g_re,g_im,hr_re,hr_im
//! 0,<g_re>,<g_im>,<hr_re>,<hr_im>
//! ...
//! hd,<hd_re>,<hd_im>,<noise_power>,<tx_power>
//! ```
//!
//! Element rows are numbered from 0. Values are written with 17 significant
//! digits so every `f64` survives a round trip bit-for-bit.

use std::io::{BufRead, Write};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::model::ChannelRealization;

pub const CHANNEL_HEADER: &str = "idx,g_re,g_im,hr_re,hr_im";
pub const FOOTER_TAG: &str = "hd";

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn write_channel<W: Write>(ch: &ChannelRealization, mut out: W) -> Result<()> {
    writeln!(out, "{CHANNEL_HEADER}")?;
    for (i, (g, hr)) in ch.g().iter().zip(ch.h_r()).enumerate() {
        writeln!(out, "{i},{},{},{},{}", num(g.re), num(g.im), num(hr.re), num(hr.im))?;
    }
    let hd = ch.h_d();
    writeln!(
        out,
        "{FOOTER_TAG},{},{},{},{}",
        num(hd.re),
        num(hd.im),
        num(ch.noise_power()),
        num(ch.tx_power())
    )?;
    out.flush()?;
    Ok(())
}

pub fn channel_to_string(ch: &ChannelRealization) -> String {
    let mut buf = Vec::new();
    write_channel(ch, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("channel files are ASCII")
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

fn parse_fields(line_no: usize, fields: &[&str], names: &[&str]) -> Result<Vec<f64>> {
    fields
        .iter()
        .zip(names)
        .map(|(f, name)| {
            f.trim()
                .parse::<f64>()
                .map_err(|_| parse_err(line_no, format!("field `{name}` is not a number: `{}`", f.trim())))
        })
        .collect()
}

pub fn read_channel<R: BufRead>(input: R) -> Result<ChannelRealization> {
    let mut lines = input.lines().enumerate().map(|(i, l)| (i + 1, l));

    let header = loop {
        match lines.next() {
            None => return Err(parse_err(1, format!("empty file, expected header `{CHANNEL_HEADER}`"))),
            Some((no, l)) => {
                let l = l?;
                if !l.trim().is_empty() {
                    break (no, l);
                }
            }
        }
    };
    if header.1.trim() != CHANNEL_HEADER {
        return Err(parse_err(
            header.0,
            format!("expected header `{CHANNEL_HEADER}`, found `{}`", header.1.trim()),
        ));
    }

    let mut g = Vec::new();
    let mut h_r = Vec::new();
    let mut footer: Option<(usize, [f64; 4])> = None;
    let mut last_line = header.0;

    for (no, l) in lines {
        let l = l?;
        last_line = no;
        let l = l.trim();
        if l.is_empty() {
            continue;
        }
        if footer.is_some() {
            return Err(parse_err(no, "unexpected content after the `hd` footer row"));
        }
        let fields: Vec<&str> = l.split(',').collect();
        if fields.len() != 5 {
            return Err(parse_err(no, format!("expected 5 comma-separated fields, found {}", fields.len())));
        }
        if fields[0].trim() == FOOTER_TAG {
            let v = parse_fields(no, &fields[1..], &["hd_re", "hd_im", "noise_power", "tx_power"])?;
            footer = Some((no, [v[0], v[1], v[2], v[3]]));
            continue;
        }
        let idx: usize = fields[0]
            .trim()
            .parse()
            .map_err(|_| parse_err(no, format!("field `idx` is not an index: `{}`", fields[0].trim())))?;
        if idx != g.len() {
            return Err(parse_err(no, format!("expected element index {}, found {idx}", g.len())));
        }
        let v = parse_fields(no, &fields[1..], &["g_re", "g_im", "hr_re", "hr_im"])?;
        g.push(Complex64::new(v[0], v[1]));
        h_r.push(Complex64::new(v[2], v[3]));
    }

    let Some((footer_line, [hd_re, hd_im, noise_power, tx_power])) = footer else {
        return Err(parse_err(
            last_line,
            "missing footer row `hd,<re>,<im>,<noise_power>,<tx_power>`",
        ));
    };
    if g.is_empty() {
        return Err(parse_err(footer_line, "no element rows before the `hd` footer"));
    }
    ChannelRealization::new(g, h_r, Complex64::new(hd_re, hd_im), noise_power, tx_power)
        .map_err(|e| parse_err(footer_line, e.to_string()))
}

pub fn channel_from_str(s: &str) -> Result<ChannelRealization> {
    read_channel(s.as_bytes())
}
