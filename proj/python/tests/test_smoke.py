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

import json
import os
import pathlib

import numpy as np
import pytest

import radaug

DATA = pathlib.Path(
    os.environ.get("RADAUG_DATA_DIR", pathlib.Path(__file__).resolve().parents[2] / "data")
)


def test_extract_liver_sentence():
    lex = radaug.lexicon(["low-density lesion"], ["liver"])
    got = radaug.extract_triplets(
        "A nodular low-density lesion is observed in the right lobe of the liver.", lex
    )
    assert got == [radaug.Triplet("low-density lesion", "liver", True)]


def test_negation_and_questions():
    lex = radaug.lexicon(["nodules"], ["lungs"], ["no"])
    (t,) = radaug.extract_triplets("No nodules are seen in the lungs.", lex)
    assert not t.exist
    assert radaug.render_question(t) == "Is there nodules in the lungs?"
    assert radaug.render_question(radaug.Triplet("", "liver")) == "Is the liver normal?"


def test_canonical_map():
    cmap = radaug.canonical_map(
        [(("enlargement", "lymph nodes in the retroperitoneum"),
          ("enlargement of lymph nodes", "retroperitoneum"))]
    )
    t = radaug.canonicalize(
        radaug.Triplet("enlargement", "lymph nodes in the retroperitoneum"), cmap
    )
    assert (t.entity, t.position) == ("enlargement of lymph nodes", "retroperitoneum")


def test_nn_augment_is_idempotent():
    rules = [{"region": "chest", "required_keywords": ["heart"],
              "normal_finding": "The heart is normal."}]
    text, appended = radaug.nn_augment("Lungs clear.", "chest", rules)
    assert text == "Lungs clear. The heart is normal."
    assert appended == ["The heart is normal."]
    assert radaug.nn_augment(text, "chest", rules) == (text, [])


def test_metrics():
    toks = radaug.tokenize("The liver is normal.")
    assert toks == ["the", "liver", "is", "normal"]
    assert radaug.bleu(toks, [toks]) == pytest.approx(1.0)
    assert radaug.rouge(toks, toks)["rougeL_f"] == pytest.approx(1.0)
    assert radaug.meteor(["b", "a"], ["a", "b"]) == pytest.approx(0.5)


def test_geometry_and_projectors():
    assert radaug.token_count((32, 256, 256), (4, 16, 16)) == 2048
    assert radaug.token_count((32, 512, 512), (4, 16, 16)) == 8192
    assert len(radaug.anyres_crops((64, 512, 512), (32, 256, 256), (32, 256, 256))) == 8
    x = np.random.default_rng(0).standard_normal((8, 16, 16, 4))
    assert radaug.spp_project(x, (2, 2, 2), 6, seed=1).shape == (4, 8, 8, 6)
    out = radaug.tokenpacker_project(x, (2, 2, 2), 6, seed=1)
    assert out.shape == (4, 8, 8, 6)
    np.testing.assert_array_equal(out, radaug.tokenpacker_project(x, (2, 2, 2), 6, seed=1))


def test_errors_carry_codes():
    with pytest.raises(radaug.RadaugError) as info:
        radaug.token_count((33, 256, 256), (4, 16, 16))
    assert info.value.code == "NonDivisible"
    assert "nearest valid sizes" in str(info.value)


def test_cli_round_trip(tmp_path):
    code, out, err = radaug.run_cli(
        ["extract", "--corpus", str(DATA / "sample_corpus.jsonl"),
         "--lexicon", str(DATA / "lexicon.json")]
    )
    assert code == 0, err
    rows = [json.loads(line) for line in out.splitlines()]
    assert {"entity": "low-density lesion", "position": "liver"}.items() <= rows[3].items()
    code, _, err = radaug.run_cli(["extract", "--corpus", "nope.jsonl",
                                   "--lexicon", str(DATA / "lexicon.json")])
    assert code == 1 and "nope.jsonl" in err
