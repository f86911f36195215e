#include <gtest/gtest.h>

#include <random>

#include "cira/formats.hpp"
#include "cira/labeler.hpp"

namespace {

using namespace cira;
using K = LabelKind;

constexpr const char* kButtonSentence =
    "When the red button is pushed or the power fails then the system shuts down.";

LabeledSentence run(const std::string& text) { return label(tokenize(text)); }

std::vector<LabelSpan> spans(std::initializer_list<LabelSpan> s) { return s; }

LabelError::Code error_code(const std::string& text) {
    try {
        run(text);
    } catch (const LabelError& e) {
        return e.code();
    }
    ADD_FAILURE() << "no LabelError for: " << text;
    return LabelError::Code::NotCausal;
}

TEST(Labeler, ButtonSentence) {
    const auto l = run(kButtonSentence);
    EXPECT_EQ(l.spans, spans({{K::Keyword, 0, 1},
                              {K::Cause1, 1, 6},
                              {K::Variable, 1, 4},
                              {K::Condition, 4, 6},
                              {K::Disjunction, 6, 7},
                              {K::Cause2, 7, 10},
                              {K::Variable, 7, 9},
                              {K::Condition, 9, 10},
                              {K::Keyword, 10, 11},
                              {K::Effect1, 11, 15},
                              {K::Variable, 11, 13},
                              {K::Condition, 13, 15}}));
    EXPECT_TRUE(validate_labels(l).empty());
}

TEST(Labeler, MinimalSentence) {
    const auto l = run("If A then B.");
    EXPECT_EQ(l.spans, spans({{K::Keyword, 0, 1},
                              {K::Cause1, 1, 2},
                              {K::Variable, 1, 2},
                              {K::Keyword, 2, 3},
                              {K::Effect1, 3, 4},
                              {K::Variable, 3, 4}}));
}

TEST(Labeler, CommaSplitWithoutThen) {
    const auto l = run("If the door is closed and the window is locked, the alarm is armed.");
    // If0 the1 door2 is3 closed4 and5 the6 window7 is8 locked9 ,10 the11 alarm12 is13 armed14 .15
    EXPECT_EQ(l.spans, spans({{K::Keyword, 0, 1},
                              {K::Cause1, 1, 5},
                              {K::Variable, 1, 3},
                              {K::Condition, 3, 5},
                              {K::Conjunction, 5, 6},
                              {K::Cause2, 6, 10},
                              {K::Variable, 6, 8},
                              {K::Condition, 8, 10},
                              {K::Effect1, 11, 15},
                              {K::Variable, 11, 13},
                              {K::Condition, 13, 15}}));
}

TEST(Labeler, MidSentenceCue) {
    const auto l = run("The alarm sounds when the door opens.");
    ASSERT_TRUE(l.event(EventFamily::Effect, 1));
    ASSERT_TRUE(l.event(EventFamily::Cause, 1));
    EXPECT_EQ(*l.event(EventFamily::Effect, 1), (LabelSpan{K::Effect1, 0, 3}));
    EXPECT_EQ(*l.event(EventFamily::Cause, 1), (LabelSpan{K::Cause1, 4, 7}));
    EXPECT_EQ(l.spans_of(K::Keyword), spans({{K::Keyword, 3, 4}}));
}

TEST(Labeler, ListCommaTakesNextJunctor) {
    const auto l = run("If the pin is wrong, the key is missing or the card expired then access is denied.");
    EXPECT_EQ(l.spans_of(K::Disjunction).size(), 2u);
    EXPECT_TRUE(l.spans_of(K::Conjunction).empty());
    EXPECT_TRUE(l.event(EventFamily::Cause, 3));
    EXPECT_TRUE(validate_labels(l).empty());
}

TEST(Labeler, Negations) {
    const auto l = run("If the door doesn't close then the alarm is not armed.");
    // If0 the1 door2 doesn3 '4 t5 close6 then7 the8 alarm9 is10 not11 armed12 .13
    EXPECT_EQ(l.spans_of(K::Negation), spans({{K::Negation, 4, 6}, {K::Negation, 11, 12}}));
    EXPECT_TRUE(l.is_labeled(3, K::Condition));
    EXPECT_TRUE(validate_labels(l).empty());
}

TEST(Labeler, UnlessNegatesCause) {
    const auto l = run("Unless the key is valid, the door stays locked.");
    EXPECT_TRUE(l.is_labeled(0, K::Negation));
    EXPECT_TRUE(l.is_labeled(0, K::Keyword));
    EXPECT_TRUE(validate_labels(l).empty());
}

TEST(Labeler, Errors) {
    EXPECT_EQ(error_code("The system shall be blue."), LabelError::Code::NotCausal);
    EXPECT_EQ(error_code("If then the alarm rings."), LabelError::Code::NoCause);
    EXPECT_EQ(error_code("If the door opens."), LabelError::Code::NoEffect);
    std::string many = "If a1 holds";
    for (int i = 2; i <= 10; ++i) many += " and a" + std::to_string(i) + " holds";
    many += " then b holds.";
    EXPECT_EQ(error_code(many), LabelError::Code::TooManyEvents);
}

TEST(Labeler, RandomInputIsValidOrRejected) {
    const std::vector<std::string> words = {"if", "when", "then", "and", "or", "not", "unless", ",", ".", "the",
                                            "door", "opens", "is", "closed", "doesn't", "a", "lamp", "glows",
                                            "as", "soon", "never", "no", "after", "once", "pressed"};
    std::mt19937 rng(77);
    int labeled = 0;
    for (int i = 0; i < 2000; ++i) {
        std::string text;
        const int n = std::uniform_int_distribution<int>(1, 20)(rng);
        for (int k = 0; k < n; ++k) text += words[rng() % words.size()] + " ";
        try {
            const auto l = run(text);
            const auto v = validate_labels(l);
            EXPECT_TRUE(v.empty()) << text << " -> " << (v.empty() ? "" : v.front());
            ++labeled;
        } catch (const LabelError&) {
        }
    }
    EXPECT_GT(labeled, 100);
}

TEST(Labeler, ErrorReasons) {
    EXPECT_EQ(LabelError(LabelError::Code::NotCausal, "").reason(), "NOT_CAUSAL");
    EXPECT_EQ(LabelError(LabelError::Code::NoEffect, "").reason(), "NO_EFFECT");
}

TEST(Labeler, ContractionBase) {
    EXPECT_EQ(contraction_base("doesn"), "does");
    EXPECT_EQ(contraction_base("won"), "will");
    EXPECT_EQ(contraction_base("can"), "can");
    EXPECT_FALSE(contraction_base("door"));
}

TEST(LabelKinds, NamesRoundTrip) {
    for (int i = 0; i <= static_cast<int>(K::Keyword); ++i) {
        const auto k = static_cast<K>(i);
        EXPECT_EQ(parse_label_kind(to_string(k)), k);
    }
    EXPECT_EQ(to_string(K::Cause1), "CAUSE_1");
    EXPECT_EQ(event_label(EventFamily::Effect, 3), K::Effect3);
    EXPECT_EQ(event_number(K::Cause9), 9);
    EXPECT_FALSE(parse_label_kind("CAUSE_10"));
}

LabeledSentence button() { return run(kButtonSentence); }

bool mentions(const std::vector<std::string>& v, const std::string& needle) {
    for (const auto& s : v) {
        if (s.find(needle) != std::string::npos) return true;
    }
    return false;
}

TEST(ValidateLabels, OverlappingEvents) {
    auto l = button();
    l.spans.push_back({K::Cause3, 5, 8});
    EXPECT_TRUE(mentions(validate_labels(l), "overlap"));
}

TEST(ValidateLabels, NumberingGap) {
    auto l = button();
    for (auto& s : l.spans) {
        if (s.kind == K::Cause1) s.kind = K::Cause3;
    }
    EXPECT_TRUE(mentions(validate_labels(l), "CAUSE_1 missing"));
}

TEST(ValidateLabels, OrphanVariable) {
    auto l = button();
    l.spans.push_back({K::Variable, 10, 11});
    EXPECT_TRUE(mentions(validate_labels(l), "not contained in any event span"));
}

TEST(ValidateLabels, OutOfRange) {
    auto l = button();
    l.spans.push_back({K::Keyword, 15, 17});
    EXPECT_FALSE(validate_labels(l).empty());
}

TEST(ValidateLabels, DuplicateEventLabel) {
    auto l = button();
    for (auto& s : l.spans) {
        if (s.kind == K::Cause2) s.kind = K::Cause1;
    }
    EXPECT_FALSE(validate_labels(l).empty());
}

TEST(ValidateLabels, JunctorOutsideEvents) {
    auto l = button();
    l.spans.push_back({K::Conjunction, 14, 15});
    EXPECT_FALSE(validate_labels(l).empty());
}

TEST(LabelWire, CodePointOffsets) {
    const Json j = labels_to_json(button());
    ASSERT_GE(j.size(), 2u);
    EXPECT_EQ(j[1]["label"], "CAUSE_1");
    EXPECT_EQ(j[1]["begin"], 5);
    EXPECT_EQ(j[1]["end"], 29);
}

TEST(LabelWire, StageShape) {
    const Json j = label_stage_to_json(button());
    EXPECT_EQ(j["text"], kButtonSentence);
    EXPECT_EQ(j["tokens"].size(), 16u);
    EXPECT_EQ(j["labels"].size(), 12u);
}

TEST(LabelWire, RoundTrip) {
    const auto l = run("Wenn die Tür öffnet — if the door opens then the lamp glows.");
    EXPECT_EQ(labels_from_json(l.sentence, labels_to_json(l)), l);
}

TEST(LabelWire, OffsetOffTokenBoundary) {
    const auto s = tokenize(kButtonSentence);
    const Json bad = Json::array({Json{{"label", "CAUSE_1"}, {"begin", 6}, {"end", 29}}});
    try {
        labels_from_json(s, bad);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.position(), "/0/begin");
    }
    EXPECT_THROW(labels_from_json(s, Json::array({Json{{"label", "CAUSE_X"}, {"begin", 5}, {"end", 29}}})),
                 ParseError);
}

TEST(Labeler, BundledCorpusProducesValidLabels) {
    const auto entries = read_corpus(std::string(CIRA_DATA_DIR) + "/corpus.jsonl");
    int labeled = 0;
    for (const auto& e : entries) {
        if (!e.gold_causal) continue;
        const auto l = run(e.text);
        EXPECT_TRUE(validate_labels(l).empty()) << e.id;
        EXPECT_EQ(labels_from_json(l.sentence, labels_to_json(l)), l) << e.id;
        EXPECT_EQ(run(e.text), l) << e.id;
        ++labeled;
    }
    EXPECT_GE(labeled, 10);
}

}  // namespace
