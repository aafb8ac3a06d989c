import pytest

from apptechminer.corpus import Paper, Section, build_corpus
from apptechminer.synth import SynthConfig, generate


def paper(pid, title, year=2000, abstract=None, sections=(), refs=(), venue="ACL"):
    secs = tuple(Section(h, b) for h, b in sections)
    return Paper(pid, title, year, venue, abstract, secs, tuple(refs))


def citing(pid, cited, heading="3 Method", sentence="We use [[{}]] here.", title=None,
           year=2000):
    """A paper citing ``cited`` (id or list of ids) once each in one section."""
    cited = [cited] if isinstance(cited, str) else list(cited)
    body = " ".join(sentence.format(c) for c in cited)
    return paper(pid, title or f"Paper {pid}", year, sections=[(heading, body)], refs=cited)


def corpus_of(*papers, **cfg):
    from apptechminer.corpus import CorpusConfig
    return build_corpus(papers, CorpusConfig(**cfg) if cfg else None)


@pytest.fixture(scope="session")
def synth_clean():
    return generate(SynthConfig(rng_seed=1))


@pytest.fixture(scope="session")
def synth_noisy():
    return generate(SynthConfig(rng_seed=1, noise_rate=0.2))


ACCEPTANCE = pytest.StashKey[list]()


def pytest_configure(config):
    config.stash[ACCEPTANCE] = []


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(ACCEPTANCE, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)


@pytest.fixture
def criterion(request):
    """Record one PASS/FAIL line per acceptance criterion."""
    def record(cid, ok, detail):
        line = f"{cid} {'PASS' if ok else 'FAIL'}  {detail}"
        request.config.stash[ACCEPTANCE].append(line)
        print(line)
        return ok
    return record
