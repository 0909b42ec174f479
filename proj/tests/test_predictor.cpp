// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <filesystem>

#include "mindhash/error.hpp"
#include "mindhash/predictor.hpp"

using namespace mindhash;
using namespace mindhash::predictor;

TEST_SUITE("predictor") {
  TEST_CASE("alphabet") {
    CHECK(char_index(' ') == 0);
    CHECK(char_index('~') == 94);
    CHECK(index_char(char_index('Q')) == 'Q');
    CHECK_THROWS_AS(char_index('\n'), Error);
  }

  TEST_CASE("sequences hold out the final transition") {
    const auto full = full_sequence("abcd");
    CHECK(full.inputs.size() == 3);
    const auto train = training_sequence("abcd");
    REQUIRE(train.inputs.size() == 2);
    CHECK(train.targets.back() == char_index('c'));
    CHECK(training_sequence("ab").inputs.empty());
  }

  TEST_CASE("parameter shapes and normalised outputs") {
    const LstmModel m(1);
    CHECK(m.hidden() == 50);
    CHECK(m.params().wx.rows() == 200);
    CHECK(m.params().wx.cols() == 95);
    CHECK(m.params().wh.cols() == 50);
    CHECK(m.params().wy.rows() == 95);
    CHECK(m.params().size() == 200 * 95 + 200 * 50 + 200 + 95 * 50 + 95);
    for (const auto& p : m.forward("hello world!")) {
      CHECK(std::abs(p.sum() - 1.0) <= 1e-6);
      CHECK(p.minCoeff() > 0.0);
    }
  }

  TEST_CASE("gradient check") {
    const LstmModel m(5);
    const auto sample = random_passwords(3, 4, 9, 11);
    const auto ok = gradient_check(m, sample, 200, 1);
    CHECK(ok.checked == 200);
    CHECK(ok.max_relative_error <= 1e-4);

    const auto broken = gradient_check(m, sample, 200, 1, 1e-5,
                                       [](LstmParams& g) { g.wh *= 1.5; g.wy *= 1.5; });
    CHECK(broken.max_relative_error > 1e-2);

    const std::vector<std::string> nothing = {"a", "b"};
    const auto zero = gradient_check(m, nothing, 200, 1);
    CHECK(zero.max_relative_error <= 1e-12);
  }

  TEST_CASE("gradient check after some training") {
    TrainConfig config;
    config.epochs = 5;
    const auto corpus = random_passwords(20, 4, 10, 2);
    const auto result = train(corpus, config);
    const std::vector<std::string> sample(corpus.begin(), corpus.begin() + 3);
    CHECK(gradient_check(result.model, sample, 200, 9).max_relative_error <= 1e-4);
  }

  TEST_CASE("training preconditions") {
    const std::vector<std::string> corpus = {"abcd"};
    TrainConfig config;
    config.epochs = 0;
    CHECK_THROWS_AS(train(corpus, config), Error);
    config.epochs = 1;
    const std::vector<std::string> empty;
    CHECK_THROWS_AS(train(empty, config), Error);
    const std::vector<std::string> too_short = {"ab", "c"};
    CHECK_THROWS_AS(train(too_short, config), Error);
  }

  TEST_CASE("training is deterministic and ignores input order") {
    auto corpus = random_passwords(15, 3, 8, 4);
    TrainConfig config;
    config.epochs = 3;
    const auto a = train(corpus, config);
    const auto b = train(corpus, config);
    std::reverse(corpus.begin(), corpus.end());
    const auto c = train(corpus, config);
    CHECK(a.model.to_json() == b.model.to_json());
    CHECK(a.model.to_json() == c.model.to_json());
    CHECK(a.epoch_loss == c.epoch_loss);
  }

  TEST_CASE("a repeated pattern is learned") {
    const std::vector<std::string> corpus(10, "abababababababab");
    TrainConfig config;
    config.epochs = 10;
    const auto r = train(corpus, config);
    for (std::size_t i = 1; i < r.epoch_loss.size(); ++i) {
      CHECK(r.epoch_loss[i] <= r.epoch_loss[i - 1] + 1e-9);
    }
    config.epochs = 40;
    const auto longer = train(corpus, config);
    CHECK(last_char_accuracy(longer.model, corpus) == 1.0);
  }

  TEST_CASE("an untrained model guesses at chance") {
    const LstmModel m(17);
    const auto corpus = random_passwords(10000, 2, 8, 23);
    const double acc = last_char_accuracy(m, corpus);
    CHECK(std::abs(acc - 1.0 / 95.0) <= 0.01);
  }

  TEST_CASE("checkpoints round trip") {
    TrainConfig config;
    config.epochs = 2;
    const std::vector<std::string> corpus = {"hello there", "general kenobi"};
    const auto r = train(corpus, config);
    const auto path = std::filesystem::temp_directory_path() / "mindhash_ckpt_test.json";
    r.model.save(path);
    const auto back = LstmModel::load(path);
    CHECK(back.to_json() == r.model.to_json());
    CHECK((back.distribution("hello") - r.model.distribution("hello")).norm() == 0.0);
    std::filesystem::remove(path);
    auto doc = r.model.to_json();
    doc["wh"]["rows"] = 3;
    CHECK_THROWS_AS(LstmModel::from_json(doc), Error);
    CHECK(loss_curve_csv(r.epoch_loss).rfind("epoch,loss\n1,", 0) == 0);
  }

  TEST_CASE("n-gram baseline") {
    const std::vector<std::string> as = {"aaaaaa", "aaaa"};
    const NgramModel unigram(1, as);
    CHECK(last_char_accuracy(unigram, as) == 1.0);
    CHECK(unigram.predict("zz") == ' ');  // unseen context: uniform, lowest index wins
    const auto p = unigram.distribution("q");
    CHECK(p.maxCoeff() == doctest::Approx(1.0 / 95));
    CHECK_THROWS_AS(NgramModel(0, as), Error);
  }
}
