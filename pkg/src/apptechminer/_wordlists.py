# Bundled word lists backing the default POS lexicon and stopword filter.
# Kept small on purpose; users extend them with a lexicon file.

STOPWORDS = frozenset("""
a about above across after again against all almost along also although am among an and another any
are as at be because been before being below between both but by can cannot could did do does doing
done down during each either else et etc even ever every for from further had has have having he her
here hers herself him himself his how however i if in into is it its itself just least less let like
many may me might more most much must my myself neither no nor not now of off often on once one only
onto or other others otherwise our ours ourselves out over own per rather same she should since so some
such than that the their theirs them themselves then there therefore these they this those though
through throughout thus to too toward towards under until up upon us very via was we were what when
where whereas whether which while who whom whose why will with within without would yet you your yours
yourself yourselves al ie eg vs cf
""".split())

# Verbs, auxiliaries and adverbs: tagged OTHER so they break noun-phrase runs.
VERBS_ADVERBS = frozenset("""
use uses used utilize utilizes utilized employ employs employed apply applies applied adopt adopts
adopted follow follows followed following rely relies relied run runs ran train trains trained
show shows showed shown present presents presented propose proposes proposed describe describes
described compute computes computed obtain obtains obtained achieve achieves achieved report reports
reported perform performs performed compare compares compared evaluate evaluates evaluated extend
extends extended implement implements implemented introduce introduces introduced improve improves
improved build builds built make makes made take takes took taken give gives gave given find finds found
see seen note noted consider considers considered include includes included including provide provides
provided produce produces produced yield yields yielded combine combines combined define defines defined
allow allows allowed achieve require requires required get gets got reach reaches reached outperform
outperforms outperformed study studies studied investigate investigates investigated explore explores
explored address addresses addressed focus focuses focused learn learns learned learnt estimate
estimates estimated measure measures measured based according resulting leads led suggest suggests
suggested demonstrate demonstrates demonstrated observe observes observed choose chose chosen set
here there well also only further already still again recently previously widely commonly generally
typically usually similarly instead respectively significantly substantially directly originally
simply mainly largely particularly especially finally first second third then next together
""".split())

ADJECTIVES = frozenset("""
new novel efficient robust fast simple large small good better best previous standard original open
unsupervised supervised semi-supervised neural probabilistic statistical maximum minimum conditional
discriminative generative bayesian latent hidden rich weak strong prior earlier recent modern classical
empirical scalable improved effective accurate useful helpful important several various different
similar multiple single multilingual bilingual monolingual lexical syntactic semantic sentential
automatic manual annotated available free public full partial global local high low higher lower
state-of-the-art well-known widely-used current standard-based additional common general specific
exact approximate linear nonlinear greedy optimal iterative joint independent shallow deep
""".split())

NOUNS = frozenset("""
training parsing tagging translation recognition analysis model models parser tagger corpus treebank
score metric toolkit algorithm system systems method methods approach data dataset features feature
implementation decoder aligner classifier grammar lexicon framework task tasks results experiments
work paper papers
""".split())
