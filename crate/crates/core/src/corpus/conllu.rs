//! CoNLL-U reader for externally produced dependency parses.
//!
//! Only the columns this pipeline consumes (FORM, LEMMA, HEAD, DEPREL)
//! are retained. Multiword-token ranges (`3-4`) and empty nodes (`5.1`)
//! are skipped, per the Universal Dependencies format.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;

use super::{CorpusError, ParsedSentence, ParsedToken};

const SENT_ID_PREFIX: &str = "# sent_id =";
const COLUMNS: usize = 10;

/// Reads a CoNLL-U file into a map from sentence id to parsed sentence.
///
/// Every block must carry a `# sent_id =` comment; duplicated ids are
/// rejected.
pub fn load_conllu(path: &Path) -> Result<BTreeMap<String, ParsedSentence>, CorpusError> {
    let file = File::open(path).map_err(|e| CorpusError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    let reader = BufReader::new(file);

    let mut sentences = BTreeMap::new();
    let mut block = BlockState::new(1);
    let mut block_ordinal = 0usize;

    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx as u64 + 1;
        let line = line.map_err(|e| CorpusError::Io {
            path: path.display().to_string(),
            source: e,
        })?;
        if line.trim().is_empty() {
            if !block.is_blank() {
                block_ordinal += 1;
                block.finish(block_ordinal, &mut sentences)?;
            }
            block = BlockState::new(block_ordinal + 1);
            continue;
        }
        block.push_line(line_no, &line)?;
    }
    if !block.is_blank() {
        block_ordinal += 1;
        block.finish(block_ordinal, &mut sentences)?;
    }
    Ok(sentences)
}

struct BlockState {
    sent_id: Option<String>,
    tokens: Vec<ParsedToken>,
    saw_content: bool,
}

impl BlockState {
    fn new(_ordinal_hint: usize) -> Self {
        BlockState {
            sent_id: None,
            tokens: Vec::new(),
            saw_content: false,
        }
    }

    fn is_blank(&self) -> bool {
        !self.saw_content
    }

    fn push_line(&mut self, line_no: u64, line: &str) -> Result<(), CorpusError> {
        self.saw_content = true;
        if line.starts_with('#') {
            if let Some(value) = line.strip_prefix(SENT_ID_PREFIX) {
                self.sent_id = Some(value.trim().to_string());
            }
            return Ok(());
        }
        let fields: Vec<&str> = line.split('\t').collect();
        if fields.len() != COLUMNS {
            return Err(CorpusError::Conllu {
                line: line_no,
                msg: format!("expected {COLUMNS} tab-separated columns, found {}", fields.len()),
            });
        }
        let id_field = fields[0];
        // multiword-token range or empty node: not part of the basic tree
        if id_field.contains('-') || id_field.contains('.') {
            return Ok(());
        }
        let token_id: usize = id_field.parse().map_err(|_| CorpusError::Conllu {
            line: line_no,
            msg: format!("token id {id_field:?} is not an integer"),
        })?;
        if token_id != self.tokens.len() + 1 {
            return Err(CorpusError::Conllu {
                line: line_no,
                msg: format!(
                    "token id {token_id} out of sequence (expected {})",
                    self.tokens.len() + 1
                ),
            });
        }
        let head_index: usize = fields[6].parse().map_err(|_| CorpusError::Conllu {
            line: line_no,
            msg: format!("head {:?} is not a non-negative integer", fields[6]),
        })?;
        let deprel = fields[7];
        if deprel.is_empty() {
            return Err(CorpusError::Conllu {
                line: line_no,
                msg: "empty deprel".to_string(),
            });
        }
        self.tokens.push(ParsedToken {
            form: fields[1].to_string(),
            lemma: fields[2].to_string(),
            head_index,
            deprel: deprel.to_string(),
        });
        Ok(())
    }

    fn finish(
        self,
        ordinal: usize,
        sentences: &mut BTreeMap<String, ParsedSentence>,
    ) -> Result<(), CorpusError> {
        let sent_id = self
            .sent_id
            .ok_or(CorpusError::MissingSentId { ordinal })?;
        if sentences.contains_key(&sent_id) {
            return Err(CorpusError::DuplicateSentId { id: sent_id });
        }
        sentences.insert(
            sent_id.clone(),
            ParsedSentence {
                sentence_id: sent_id,
                tokens: self.tokens,
            },
        );
        Ok(())
    }
}
