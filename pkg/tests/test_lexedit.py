"""Tokenization, POS gating, edit semantics, and the flat action space."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from claimforge.errors import EmptyClaim, IllegalAction, NoSynonym, OutOfRange
from claimforge.lexedit import (
    ACTION_SPACE,
    MAX_POSITIONS,
    ActionKind,
    EditAction,
    Lexicon,
    POSCategory,
    apply_action,
    choose_synonym,
    detokenize,
    flatten_action,
    legal_actions,
    tokenize,
    unflatten_action,
)


class TestTokenize:
    def test_spec_example(self, lexicon):
        claim = tokenize("The Earth is flat.", lexicon)
        assert claim.tokens == ("The", "Earth", "is", "flat", ".")
        assert claim.pos == (
            POSCategory.STOPWORD,
            POSCategory.NOUN,
            POSCategory.VERB,
            POSCategory.ADJECTIVE,
            POSCategory.OTHER,
        )

    def test_unknown_word_maps_to_other(self):
        claim = tokenize("x", Lexicon())
        assert claim.tokens == ("x",)
        assert claim.pos == (POSCategory.OTHER,)

    def test_whitespace_only_rejected(self, lexicon):
        with pytest.raises(EmptyClaim):
            tokenize("   ", lexicon)

    def test_punctuation_detached(self, lexicon):
        claim = tokenize("cat, dog!", lexicon)
        assert claim.tokens == ("cat", ",", "dog", "!")

    @given(st.lists(st.sampled_from(["cat", "dog", "the", "ran", "flat", ".", ","]), min_size=1, max_size=10))
    def test_roundtrip(self, lexicon, words):
        claim = tokenize(" ".join(words), lexicon)
        again = tokenize(detokenize(claim), lexicon)
        assert again.tokens == claim.tokens

    def test_pos_priority_verb_over_stopword(self):
        lex = Lexicon()
        lex.add_pos("is", "VERB")
        lex.add_pos("is", "STOP")
        assert lex.pos_of("is") is POSCategory.VERB

    def test_case_insensitive_lookup(self, lexicon):
        claim = tokenize("FLAT Flat flat", lexicon)
        assert all(p is POSCategory.ADJECTIVE for p in claim.pos)


class TestActionSpace:
    def test_spec_flat_examples(self):
        assert flatten_action(EditAction(ActionKind.SWAP_SYNONYM, 0)) == 0
        assert flatten_action(EditAction(ActionKind.ADD_SYNONYM, 1)) == 33
        assert flatten_action(EditAction(ActionKind.REMOVE, 31)) == 127

    @given(st.integers(min_value=0, max_value=ACTION_SPACE - 1))
    def test_bijection(self, i):
        assert flatten_action(unflatten_action(i)) == i

    @given(
        st.sampled_from(list(ActionKind)),
        st.integers(min_value=0, max_value=MAX_POSITIONS - 1),
    )
    def test_bijection_reverse(self, kind, pos):
        action = EditAction(kind, pos)
        assert unflatten_action(flatten_action(action)) == action

    def test_out_of_range(self):
        with pytest.raises(OutOfRange):
            unflatten_action(128)
        with pytest.raises(OutOfRange):
            unflatten_action(-1)
        with pytest.raises(OutOfRange):
            EditAction(ActionKind.REMOVE, 32)


class TestLegalActions:
    def test_single_token_cannot_be_removed(self, lexicon):
        claim = tokenize("flat", lexicon)
        got = legal_actions(claim, lexicon)
        assert got == {
            EditAction(ActionKind.SWAP_SYNONYM, 0),
            EditAction(ActionKind.ADD_SYNONYM, 0),
        }

    def test_stopword_only_remove(self, lexicon):
        claim = tokenize("the cat", lexicon)
        at_zero = {a for a in legal_actions(claim, lexicon) if a.position == 0}
        assert at_zero == {EditAction(ActionKind.REMOVE, 0)}

    def test_positions_beyond_32_not_editable(self, lexicon):
        claim = tokenize(" ".join(["cat"] * 40), lexicon)
        got = legal_actions(claim, lexicon)
        assert all(a.position < 32 for a in got)
        assert {a.position for a in got} == set(range(32))

    def test_verb_supports_all_four(self, lexicon):
        lex = Lexicon()
        lex.add_pos("ran", "VERB")
        lex.add_synonyms("ran", ["sprinted"])
        lex.add_verb_form("ran", "run")
        claim = tokenize("he ran", lex)
        kinds = {a.kind for a in legal_actions(claim, lex) if a.position == 1}
        assert kinds == set(ActionKind)

    def test_present_requires_differing_base(self, lexicon):
        lex = Lexicon()
        lex.add_pos("run", "VERB")
        lex.add_verb_form("run", "run")  # base == surface: no tense change
        claim = tokenize("cats run", lex)
        assert all(
            a.kind is not ActionKind.PRESENT_TENSE for a in legal_actions(claim, lex)
        )

    def test_swap_requires_synonyms(self, lexicon):
        claim = tokenize("dog cat", lexicon)  # dog has no synonyms
        kinds_at_zero = {a.kind for a in legal_actions(claim, lexicon) if a.position == 0}
        assert kinds_at_zero == {ActionKind.REMOVE}

    def test_every_legal_action_applies(self, lexicon):
        claim = tokenize("The Earth is flat and cats ran quickly .", lexicon)
        for action in legal_actions(claim, lexicon):
            apply_action(claim, action, lexicon)  # must not raise


class TestApplyAction:
    def test_remove(self, lexicon):
        claim = tokenize("The Earth is flat", lexicon)
        edited = apply_action(claim, EditAction(ActionKind.REMOVE, 0), lexicon)
        assert edited.tokens == ("Earth", "is", "flat")
        assert edited.edit_history[-1] == EditAction(ActionKind.REMOVE, 0)

    def test_swap_uses_first_synonym(self, lexicon):
        claim = tokenize("Earth is flat", lexicon)
        edited = apply_action(claim, EditAction(ActionKind.SWAP_SYNONYM, 2), lexicon)
        assert edited.tokens == ("Earth", "is", "level")

    def test_add_inserts_after(self, lexicon):
        claim = tokenize("Earth is flat", lexicon)
        edited = apply_action(claim, EditAction(ActionKind.ADD_SYNONYM, 2), lexicon)
        assert edited.tokens == ("Earth", "is", "flat", "level")

    def test_present_tense(self, lexicon):
        claim = tokenize("He ran home", lexicon)
        edited = apply_action(claim, EditAction(ActionKind.PRESENT_TENSE, 1), lexicon)
        assert edited.tokens == ("He", "run", "home")

    def test_illegal_action_raises(self, lexicon):
        claim = tokenize("the cat", lexicon)
        with pytest.raises(IllegalAction):
            apply_action(claim, EditAction(ActionKind.PRESENT_TENSE, 0), lexicon)
        with pytest.raises(IllegalAction):
            apply_action(claim, EditAction(ActionKind.REMOVE, 5), lexicon)

    def test_determinism(self, lexicon):
        claim = tokenize("Earth is flat", lexicon)
        action = EditAction(ActionKind.SWAP_SYNONYM, 2)
        assert apply_action(claim, action, lexicon).tokens == apply_action(
            claim, action, lexicon
        ).tokens

    @settings(max_examples=300)
    @given(st.data())
    def test_length_algebra(self, lexicon, data):
        words = data.draw(
            st.lists(
                st.sampled_from(["the", "Earth", "is", "flat", "cat", "ran", "zzz"]),
                min_size=1,
                max_size=8,
            )
        )
        claim = tokenize(" ".join(words), lexicon)
        legal = sorted(legal_actions(claim, lexicon), key=lambda a: a.flat)
        if not legal:
            return
        action = data.draw(st.sampled_from(legal))
        edited = apply_action(claim, action, lexicon)
        expected = {
            ActionKind.REMOVE: len(claim) - 1,
            ActionKind.ADD_SYNONYM: len(claim) + 1,
            ActionKind.SWAP_SYNONYM: len(claim),
            ActionKind.PRESENT_TENSE: len(claim),
        }[action.kind]
        assert len(edited) == expected


class TestChooseSynonym:
    def test_first_in_stored_order(self, lexicon):
        assert choose_synonym("flat", lexicon) == "level"
        assert choose_synonym("FLAT", lexicon) == "level"

    def test_no_synonym(self, lexicon):
        with pytest.raises(NoSynonym):
            choose_synonym("dog", lexicon)


class TestLexiconFiles:
    def test_roundtrip_dir(self, lexicon, tmp_path):
        lexicon.save_dir(tmp_path / "lex")
        loaded = Lexicon.from_dir(tmp_path / "lex")
        assert loaded.synonyms == lexicon.synonyms
        assert loaded.verb_forms == lexicon.verb_forms
        assert loaded.stopwords == lexicon.stopwords
        assert loaded.pos_table == lexicon.pos_table

    def test_comment_lines_ignored(self, tmp_path):
        (tmp_path / "synonyms.tsv").write_text("# comment\nflat\tlevel\n", "utf-8")
        (tmp_path / "pos.tsv").write_text("# c\nflat\tADJ\n", "utf-8")
        (tmp_path / "verbs.tsv").write_text("# c\nran\trun\n", "utf-8")
        lex = Lexicon.from_dir(tmp_path)
        assert lex.synonyms_of("flat") == ["level"]

    def test_synonym_never_contains_headword(self):
        lex = Lexicon()
        lex.add_synonyms("flat", ["flat", "level"])
        assert lex.synonyms_of("flat") == ["level"]

    def test_builtin_loads(self):
        lex = Lexicon.builtin()
        assert lex.pos_of("the") is POSCategory.STOPWORD
        assert lex.present_form("ran") == "run"
        assert all(lex.verb_forms.values())
