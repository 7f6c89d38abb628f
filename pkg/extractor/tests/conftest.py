import pytest
import torch
from tokenizers import Tokenizer, models, normalizers, pre_tokenizers
from transformers import BertConfig, BertModel, BertTokenizerFast

VOCAB = [
    "[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]",
    "der", "hund", "schlaft", "die", "katze", "wartet",
    "il", "chaun", "dorma", "la", "giat", "spetga",
    "brand", "##versicherung", "##s", ".",
]


@pytest.fixture(scope="session")
def tiny_model_dir(tmp_path_factory):
    """A miniature randomly-initialized BERT saved to disk, so the tests
    exercise the real transformers loading path without any network."""
    directory = tmp_path_factory.mktemp("tiny-bert")
    wordpiece = models.WordPiece(
        {word: index for index, word in enumerate(VOCAB)}, unk_token="[UNK]"
    )
    backend = Tokenizer(wordpiece)
    backend.normalizer = normalizers.BertNormalizer(lowercase=True)
    backend.pre_tokenizer = pre_tokenizers.BertPreTokenizer()
    tokenizer = BertTokenizerFast(
        tokenizer_object=backend,
        unk_token="[UNK]", pad_token="[PAD]", cls_token="[CLS]",
        sep_token="[SEP]", mask_token="[MASK]",
    )
    tokenizer.save_pretrained(directory)

    torch.manual_seed(0)
    config = BertConfig(
        vocab_size=len(VOCAB),
        hidden_size=16,
        num_hidden_layers=2,
        num_attention_heads=2,
        intermediate_size=32,
        max_position_embeddings=64,
    )
    BertModel(config).save_pretrained(directory)
    return str(directory)
