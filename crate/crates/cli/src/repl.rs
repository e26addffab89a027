//! Line-oriented interactive session. Bindings persist; each query is
//! evaluated inside the bindings made so far, so a bound random value is
//! drawn once and shared by every use.

use std::io::{BufRead, IsTerminal, Write};

use alea::ast::Expr;
use alea::engine::{RngState, DEFAULT_SEED};
use alea::frontend::{self, syntax::SKind, FrontendError};
use alea::Program;

use crate::render;

const HELP: &str = "\
  x := e        bind x (several bindings may be separated by `;`)
  e             exact distribution of e
  :d e          exact distribution of e
  :t e          type of e
  :s n e        n pseudo-random samples of e
  :q            quit
";

pub struct Session {
    bindings: Vec<(String, Expr)>,
    rng: RngState,
}

impl Default for Session {
    fn default() -> Self {
        Session {
            bindings: Vec::new(),
            rng: RngState::seeded(DEFAULT_SEED),
        }
    }
}

/// Splits `x := e; :d x` before the command part.
fn split_command(line: &str) -> (&str, Option<&str>) {
    for (i, _) in line.match_indices(';') {
        let rest = line[i + 1..].trim_start();
        if rest.starts_with(':') && !rest.starts_with(":=") {
            return (&line[..i], Some(rest));
        }
    }
    (line, None)
}

impl Session {
    fn names(&self) -> Vec<&str> {
        self.bindings.iter().map(|(n, _)| n.as_str()).collect()
    }

    fn wrap(&self, mut e: Expr) -> Expr {
        for (name, rhs) in self.bindings.iter().rev() {
            e = Expr::let_in(rhs.clone(), name, e);
        }
        e
    }

    fn program(&self, src: &str) -> Result<Program, alea::Error> {
        let e = frontend::compile(src, &self.names())?;
        Program::from_expr(&self.wrap(e))
    }

    fn bind(&mut self, src: &str) -> Result<Option<String>, alea::Error> {
        let s = frontend::parse(src)?;
        let SKind::Block(bindings, None) = &s.kind else {
            return Ok(None);
        };
        let mut out = String::new();
        let mut staged = Vec::new();
        for (name, rhs) in bindings {
            let names: Vec<&str> = self
                .names()
                .into_iter()
                .chain(staged.iter().map(|(n, _): &(String, Expr)| n.as_str()))
                .collect();
            let e = frontend::desugar(rhs, &names).map_err(|e: FrontendError| e.locate(src))?;
            let mut wrapped = e.clone();
            for (n, r) in staged.iter().rev() {
                wrapped = Expr::let_in(r.clone(), n, wrapped);
            }
            let p = Program::from_expr(&self.wrap(wrapped))?;
            out.push_str(&format!("{name} : {}\n", p.ty));
            staged.push((name.clone(), e));
        }
        self.bindings.extend(staged);
        Ok(Some(out))
    }

    fn command(&mut self, cmd: &str) -> Result<String, String> {
        let (word, rest) = cmd.split_once(char::is_whitespace).unwrap_or((cmd, ""));
        let rest = rest.trim();
        let fail = |e: alea::Error| e.to_string();
        match word {
            ":t" => Ok(format!("{}\n", self.program(rest).map_err(fail)?.ty)),
            ":d" => self.distribution(rest),
            ":s" => {
                let (n, e) = rest
                    .split_once(char::is_whitespace)
                    .ok_or("usage: :s n e")?;
                let n: usize = n
                    .parse()
                    .ok()
                    .filter(|&n| n > 0)
                    .ok_or("the sample count must be a positive integer")?;
                let p = self.program(e.trim()).map_err(fail)?;
                let mut samples = Vec::with_capacity(n);
                for _ in 0..n {
                    let (v, s) = p.sample(self.rng).map_err(fail)?;
                    self.rng = s;
                    samples.push(v);
                }
                Ok(render::frequencies(&samples, &p.ty))
            }
            ":h" | ":help" => Ok(HELP.to_string()),
            other => Err(format!("unknown command `{other}`; try :help")),
        }
    }

    fn distribution(&self, src: &str) -> Result<String, String> {
        let p = self.program(src).map_err(|e| e.to_string())?;
        let d = p.analyze().map_err(|e| e.to_string())?;
        Ok(render::analysis(&d, &p.ty))
    }

    /// Handles one input line. `None` ends the session.
    pub fn line(&mut self, line: &str) -> Option<String> {
        let line = line.trim();
        if line.is_empty() || line.starts_with("--") {
            return Some(String::new());
        }
        if matches!(line, ":q" | ":quit") {
            return None;
        }
        let (head, cmd) = if line.starts_with(':') {
            ("", Some(line))
        } else {
            split_command(line)
        };
        let mut out = String::new();
        if !head.trim().is_empty() {
            match self.bind(head) {
                Ok(Some(text)) => out.push_str(&text),
                Ok(None) if cmd.is_none() => match self.distribution(head) {
                    Ok(text) => out.push_str(&text),
                    Err(e) => return Some(format!("error: {e}\n")),
                },
                Ok(None) => {
                    return Some("error: only bindings may precede a command\n".to_string())
                }
                Err(e) => return Some(format!("error: {e}\n")),
            }
        }
        if let Some(cmd) = cmd {
            match self.command(cmd) {
                Ok(text) => out.push_str(&text),
                Err(e) => out.push_str(&format!("error: {e}\n")),
            }
        }
        Some(out)
    }
}

pub fn run(input: &mut dyn BufRead, out: &mut dyn Write) -> i32 {
    let prompt = std::io::stdin().is_terminal();
    let mut session = Session::default();
    let mut buf = String::new();
    loop {
        if prompt {
            let _ = write!(out, "alea> ");
            let _ = out.flush();
        }
        buf.clear();
        match input.read_line(&mut buf) {
            Ok(0) | Err(_) => return crate::EXIT_OK,
            Ok(_) => {}
        }
        match session.line(&buf) {
            Some(text) => {
                let _ = write!(out, "{text}");
            }
            None => return crate::EXIT_OK,
        }
    }
}
