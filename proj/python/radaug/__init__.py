# Copyright 2026 The radaug Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Report triplets, report augmentation, text metrics and 3D token geometry."""

import json as _json

from ._radaug import (
    CanonicalMap,
    Lexicon,
    RadaugError,
    Triplet,
    anyres_crops,
    anyres_token_budget,
    append_sentence,
    bleu,
    canonicalize,
    extract_triplets,
    keyword_present,
    mean_pool3d,
    meteor,
    mlp_project,
    render_question,
    report_to_triplets,
    rouge,
    run_cli,
    spp_project,
    split_sentences,
    token_count,
    tokenize,
    tokenpacker_project,
    triplet_f1,
)
from ._radaug import nn_augment as _nn_augment

__version__ = "0.1.0"


def lexicon(entities, positions, negation_cues=()):
    """Builds a Lexicon from plain lists.

    Entries are either a surface string or a (surface, canonical) pair.
    """
    return Lexicon.from_json(
        _json.dumps(
            {
                "entities": [list(e) if isinstance(e, tuple) else e for e in entities],
                "positions": [list(p) if isinstance(p, tuple) else p for p in positions],
                "negation_cues": list(negation_cues),
            }
        )
    )


def canonical_map(rules):
    """Builds a CanonicalMap from ((entity, position), (entity, position)) pairs."""
    doc = {
        "rules": [
            {
                "from": {"entity": src[0], "position": src[1]},
                "to": {"entity": dst[0], "position": dst[1]},
            }
            for src, dst in rules
        ]
    }
    return CanonicalMap.from_json(_json.dumps(doc))


def nn_augment(text, region, rules):
    """Appends normality findings. `rules` is a list of dicts or a JSON string."""
    if not isinstance(rules, str):
        rules = _json.dumps({"rules": list(rules)})
    return _nn_augment(text, region, rules)


def main(argv=None):
    import sys

    code, out, err = run_cli(list(sys.argv[1:] if argv is None else argv))
    sys.stdout.write(out)
    sys.stderr.write(err)
    return code
