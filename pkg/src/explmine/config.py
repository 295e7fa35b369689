"""Flat key=value run configuration, overridable from the command line.

Default thresholds follow the best-performing setting (5000/5000); the
"initial" preset raises both to 15000 for the wide first pass.
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass

DEFAULT_THRESHOLD = 5000
INITIAL_THRESHOLD = 15000
DEFAULT_MIN_SPAN = 3

NER_SOURCE_FILE = "file"
NER_SOURCE_GAZETTEER = "gazetteer"


@dataclass
class PipelineConfig:
    src_corpus: str = ""
    tgt_corpus: str = ""
    alignments: str = ""
    src_counts: str = ""
    tgt_counts: str = ""
    src_wiki_index: str = ""
    tgt_wiki_index: str = ""
    parallel_titles: str = ""
    ner_source: str = NER_SOURCE_GAZETTEER
    ner_file: str = ""
    gazetteer_titles: str = ""  # defaults to src_wiki_index when empty
    src_lang: str = "en"
    tgt_lang: str = "de"
    src_threshold: int = DEFAULT_THRESHOLD
    tgt_threshold: int = DEFAULT_THRESHOLD
    min_span: int = DEFAULT_MIN_SPAN
    output_dir: str = "run_out"
    audit_drops: bool = True

    def validate(self) -> None:
        for name in ("src_corpus", "tgt_corpus", "alignments", "src_counts",
                     "tgt_counts", "src_wiki_index", "tgt_wiki_index"):
            value = getattr(self, name)
            if not value:
                raise ValueError(f"config key {name} is required")
            if not os.path.exists(value):
                raise FileNotFoundError(f"{name}: missing input {value}")
        if self.parallel_titles and not os.path.exists(self.parallel_titles):
            raise FileNotFoundError(f"parallel_titles: missing input {self.parallel_titles}")
        if self.ner_source not in (NER_SOURCE_FILE, NER_SOURCE_GAZETTEER):
            raise ValueError(f"ner_source must be file or gazetteer, got {self.ner_source!r}")
        if self.ner_source == NER_SOURCE_FILE:
            if not self.ner_file:
                raise ValueError("ner_source=file requires ner_file")
            if not os.path.exists(self.ner_file):
                raise FileNotFoundError(f"ner_file: missing input {self.ner_file}")
        if self.gazetteer_titles and not os.path.exists(self.gazetteer_titles):
            raise FileNotFoundError(f"gazetteer_titles: missing input {self.gazetteer_titles}")
        if self.src_threshold <= 0 or self.tgt_threshold <= 0:
            raise ValueError("thresholds must be positive")
        if self.min_span <= 0:
            raise ValueError("min_span must be positive")

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


_PATH_KEYS = (
    "src_corpus", "tgt_corpus", "alignments", "src_counts", "tgt_counts",
    "src_wiki_index", "tgt_wiki_index", "parallel_titles", "ner_file",
    "gazetteer_titles", "output_dir",
)
_INT_KEYS = ("src_threshold", "tgt_threshold", "min_span")
_BOOL_KEYS = ("audit_drops",)


def load_config(path: str) -> PipelineConfig:
    """Parses 'key = value' lines; relative paths resolve against the file."""
    cfg = PipelineConfig()
    base = os.path.dirname(os.path.abspath(path))
    known = {f.name for f in dataclasses.fields(PipelineConfig)}
    with open(path, encoding="utf-8") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ValueError(f"{path}:{line_no}: expected key = value")
            key = key.strip()
            value = value.strip()
            if key not in known:
                raise ValueError(f"{path}:{line_no}: unknown config key {key!r}")
            if key in _INT_KEYS:
                setattr(cfg, key, int(value))
            elif key in _BOOL_KEYS:
                if value.lower() not in ("true", "false"):
                    raise ValueError(f"{path}:{line_no}: {key} must be true or false")
                setattr(cfg, key, value.lower() == "true")
            elif key in _PATH_KEYS:
                setattr(cfg, key, value if os.path.isabs(value) or not value
                        else os.path.join(base, value))
            else:
                setattr(cfg, key, value)
    return cfg


def save_config(cfg: PipelineConfig, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for field in dataclasses.fields(PipelineConfig):
            value = getattr(cfg, field.name)
            if isinstance(value, bool):
                value = "true" if value else "false"
            f.write(f"{field.name} = {value}\n")
