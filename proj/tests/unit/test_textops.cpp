// Copyright 2026 The BDA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bda/textops.hpp"

#include <gtest/gtest.h>

#include <sstream>

#include "bda/error.hpp"
#include "synthetic.hpp"

namespace bda::textops {
namespace {

using ::testing::TestWithParam;

TEST(Tokenize, SplitsOnWhitespace) {
  EXPECT_EQ(tokenize("ab cd"), (TokenSequence{"ab", "cd"}));
}

TEST(Tokenize, DetachesEdgePunctuation) {
  EXPECT_EQ(tokenize("ab, cd."), (TokenSequence{"ab", ",", "cd", "."}));
  EXPECT_EQ(tokenize("(ab)!"), (TokenSequence{"(", "ab", ")", "!"}));
  EXPECT_EQ(tokenize("..."), (TokenSequence{".", ".", "."}));
}

TEST(Tokenize, KeepsWordInternalPunctuation) {
  EXPECT_EQ(tokenize("don't e.g. a-b"),
            (TokenSequence{"don't", "e.g", ".", "a-b"}));
}

TEST(Tokenize, WhitespaceOnlyIsEmpty) {
  EXPECT_TRUE(tokenize("  ").empty());
  EXPECT_TRUE(tokenize("").empty());
  // U+00A0 no-break space and U+3000 ideographic space.
  EXPECT_TRUE(tokenize("\xC2\xA0\xE3\x80\x80\t\n").empty());
}

TEST(Tokenize, BanglaDandaIsDetached) {
  // "আমি ভাত খাই।" -> the danda (U+0964) is punctuation.
  const TokenSequence t = tokenize("আমি ভাত খাই।");
  ASSERT_EQ(t.size(), 4u);
  EXPECT_EQ(t[2], "খাই");
  EXPECT_EQ(t[3], "।");
}

TEST(Tokenize, NormalizesToNfc) {
  // "e" + combining acute -> precomposed U+00E9.
  EXPECT_EQ(tokenize("caf\x65\xCC\x81"), (TokenSequence{"caf\xC3\xA9"}));
  EXPECT_EQ(nfc("caf\x65\xCC\x81"), "caf\xC3\xA9");
}

TEST(Tokenize, EmojiIsAnOrdinaryToken) {
  EXPECT_EQ(tokenize("good \xF0\x9F\x98\x80"),
            (TokenSequence{"good", "\xF0\x9F\x98\x80"}));
}

TEST(Detokenize, JoinsWithSingleSpaces) {
  EXPECT_EQ(detokenize({"ab", "cd"}), "ab cd");
  EXPECT_EQ(detokenize({}), "");
}

TEST(TokenizeProperty, RoundTripThroughDetokenize) {
  Rng rng(7);
  for (int trial = 0; trial < 500; ++trial) {
    TokenSequence tokens;
    const std::size_t len = rng.below(12);
    for (std::size_t i = 0; i < len; ++i) {
      tokens.push_back(testing::letter_word(rng));
    }
    EXPECT_EQ(tokenize(detokenize(tokens)), tokens);
  }
}

TEST(TokenizeProperty, IdempotentAndLossless) {
  Rng rng(11);
  const std::string alphabet[] = {"a", "b", "z", ",", ".", "!", "'", "-",
                                  " ", " ", "\t", "অ", "।", "é"};
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    const std::size_t len = rng.below(30);
    for (std::size_t i = 0; i < len; ++i) {
      text += alphabet[rng.below(std::size(alphabet))];
    }
    const TokenSequence once = tokenize(text);
    EXPECT_EQ(tokenize(detokenize(once)), once) << text;
    std::string kept;
    for (const auto& tok : once) {
      ASSERT_FALSE(tok.empty());
      EXPECT_EQ(tok.find_first_of(" \t"), std::string::npos);
      kept += tok;
    }
    std::string expected;
    for (char c : nfc(text)) {
      if (c != ' ' && c != '\t') expected.push_back(c);
    }
    EXPECT_EQ(kept, expected) << text;
  }
}

TEST(WordNgrams, EnumeratesOrdersInRange) {
  EXPECT_EQ(word_ngrams({"a", "b", "c"}, 1, 2),
            (std::vector<std::string>{"a", "b", "c", "a b", "b c"}));
  EXPECT_TRUE(word_ngrams({"a"}, 2, 3).empty());
}

TEST(WordNgrams, RejectsBadOrders) {
  EXPECT_THROW(word_ngrams({"a"}, 0, 1), DomainError);
  EXPECT_THROW(word_ngrams({"a"}, 3, 2), DomainError);
  EXPECT_THROW(char_ngrams("a", 2, 1), DomainError);
}

TEST(WordNgramsProperty, CountMatchesLengthFormula) {
  Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const auto tokens = testing::random_tokens(rng, rng.below(15), 5);
    for (int k = 1; k <= 5; ++k) {
      const std::size_t expected =
          tokens.size() + 1 > static_cast<std::size_t>(k)
              ? tokens.size() - static_cast<std::size_t>(k) + 1
              : 0;
      EXPECT_EQ(word_ngrams(tokens, k, k).size(), expected);
    }
  }
}

TEST(CharNgrams, PerTokenWithMultiplicity) {
  EXPECT_EQ(char_ngrams("abc", 2, 2), (std::vector<std::string>{"ab", "bc"}));
  EXPECT_EQ(char_ngrams("ab cd", 2, 2), (std::vector<std::string>{"ab", "cd"}));
  EXPECT_EQ(char_ngrams("aaa", 2, 2), (std::vector<std::string>{"aa", "aa"}));
}

TEST(CharNgrams, CountsCodePointsNotBytes) {
  // Three Bengali code points, each 3 bytes in UTF-8.
  const auto grams = char_ngrams("অআই", 2, 3);
  ASSERT_EQ(grams.size(), 3u);
  EXPECT_EQ(grams[0], "অআ");
  EXPECT_EQ(grams[2], "অআই");
}

TEST(StopwordSet, ParsesCommentsAndBlankLines) {
  std::istringstream in("# header\nthe\n\n  a  \n#not\nকে\n");
  const StopwordSet stop = StopwordSet::parse(in);
  EXPECT_EQ(stop.size(), 3u);
  EXPECT_TRUE(stop.contains("the"));
  EXPECT_TRUE(stop.contains("a"));
  EXPECT_TRUE(stop.contains("কে"));
  EXPECT_FALSE(stop.contains("#not"));
}

TEST(StopwordSet, MembershipIsNfcExact) {
  const StopwordSet stop(std::vector<std::string>{"caf\x65\xCC\x81"});
  EXPECT_TRUE(stop.contains("caf\xC3\xA9"));
  EXPECT_FALSE(stop.contains("cafe"));
}

TEST(Predicates, BlankAndPunctuation) {
  EXPECT_TRUE(is_blank(" \t\xC2\xA0"));
  EXPECT_FALSE(is_blank(" x "));
  EXPECT_TRUE(is_punctuation(",!"));
  EXPECT_FALSE(is_punctuation("a,"));
  EXPECT_FALSE(is_punctuation(""));
}

}  // namespace
}  // namespace bda::textops
