#!/usr/bin/env python3
"""Build the bundled encyclopedia corpus and synonym table.

Writes ``src/tutorloop/data/wiki_corpus.jsonl`` (one article object per line,
fields ``title``/``text``/``links``/``tags``) and
``src/tutorloop/data/synonyms.json``. The corpus is a desk-scale stand-in for
an offline encyclopedia dump: every article opens with a one-sentence
definition, follows with a pronoun-led elaboration (which exercises the
pronoun-substitution candidate generator), and closes with a short
practice-oriented paragraph that names the topic again.

Run from anywhere; paths are resolved relative to this file. The output is
deterministic, so regenerating produces byte-identical files.
"""
from __future__ import annotations

import json
from pathlib import Path

DATA_DIR = Path(__file__).resolve().parents[1] / "src" / "tutorloop" / "data"


def t(title, tags, definition, pronoun, practice, links=()):
    return {
        "title": title,
        "tags": list(tags),
        "definition": definition,
        "pronoun": pronoun,
        "practice": practice,
        "links": list(links),
    }


TOPICS = [
    # ---- supervised methods -------------------------------------------------
    t("Linear regression", ["statistics", "supervised learning"],
      "is a statistical method that models a numeric response as a weighted sum of input variables.",
      "It minimizes squared error over the training data.",
      "Practitioners often fit linear regression as a first baseline on tabular data. Strongly correlated inputs make its coefficients unstable.",
      ["Least squares", "Ridge regression", "Logistic regression"]),
    t("Logistic regression", ["statistics", "classification"],
      "is a classification method that models the probability of a binary outcome with a sigmoid of a linear score.",
      "It fits its weights by maximizing the likelihood of the observed labels.",
      "Despite the name, logistic regression is a classifier rather than a regressor. Its scores are easy to calibrate and to inspect.",
      ["Linear regression", "Sigmoid function", "Maximum likelihood estimation"]),
    t("Ridge regression", ["statistics", "regularization"],
      "is linear regression with a squared penalty on the weight vector.",
      "It shrinks all coefficients toward zero without setting any of them exactly to zero.",
      "Ridge regression trades a little bias for a large reduction in variance. The penalty strength is chosen by cross-validation.",
      ["Linear regression", "Lasso regression", "Regularization"]),
    t("Lasso regression", ["statistics", "regularization"],
      "is linear regression with an absolute-value penalty on the weights.",
      "It drives many coefficients exactly to zero, so the fitted model is sparse.",
      "Analysts use lasso regression when they expect only a few inputs to matter. The surviving coefficients double as a feature selection.",
      ["Ridge regression", "Feature selection", "Regularization"]),
    t("Polynomial regression", ["statistics", "supervised learning"],
      "is linear regression applied to powers and products of the original inputs.",
      "It can fit curved relationships while keeping the training procedure linear in the parameters.",
      "High-degree polynomial regression oscillates wildly near the edges of the data. Regularization or a lower degree tames the fit.",
      ["Linear regression", "Overfitting"]),
    t("Decision tree", ["supervised learning", "trees"],
      "is a predictive model that routes an example through a sequence of threshold tests to a leaf.",
      "It is trained greedily by choosing, at every node, the split that most purifies the labels.",
      "A single decision tree is easy to read but easy to overfit. Depth limits and leaf-size minimums keep decision trees honest.",
      ["Random forest", "Gini impurity", "Pruning"]),
    t("Random forest", ["supervised learning", "ensembles"],
      "is an ensemble of decision trees trained on bootstrap samples with random feature subsets at each split.",
      "It averages the votes of many decorrelated trees to cut variance without raising bias much.",
      "A random forest usually beats any of its member trees out of the box. Feature importance falls out of the training almost for free.",
      ["Decision tree", "Bagging", "Bootstrap sampling"]),
    t("Gradient boosting", ["supervised learning", "ensembles"],
      "is an ensemble method that adds small trees one at a time, each fitted to the residual errors of the current model.",
      "It performs gradient descent in function space rather than in parameter space.",
      "Tuned gradient boosting dominates leaderboards on tabular benchmarks. Shrinkage and shallow trees guard it against overfitting.",
      ["Boosting", "Decision tree", "Gradient descent"]),
    t("AdaBoost", ["supervised learning", "ensembles"],
      "is a boosting algorithm that reweights training examples so later learners concentrate on earlier mistakes.",
      "It combines many weak learners into a single weighted majority vote.",
      "Classic AdaBoost uses decision stumps as its weak learners. Noisy labels hurt adaboost more than most ensemble methods.",
      ["Boosting", "Decision tree", "Ensemble learning"]),
    t("Support vector machine", ["supervised learning", "kernels"],
      "is a classifier that chooses the separating boundary with the widest margin to the nearest training points.",
      "It depends only on the support vectors, the points that touch or violate the margin.",
      "With a kernel, a support vector machine can draw highly nonlinear boundaries. Training cost grows quickly with the number of examples.",
      ["Kernel method", "Classification", "Margin"]),
    t("Naive Bayes", ["supervised learning", "probabilistic"],
      "is a probabilistic classifier that assumes every feature is independent given the class.",
      "It multiplies per-feature likelihoods with a class prior and picks the largest posterior.",
      "The independence assumption is false almost everywhere, yet naive Bayes is a strong baseline for text. Counts are smoothed to avoid zero probabilities.",
      ["Bayes theorem", "Classification", "Bag-of-words model"]),
    t("K-nearest neighbors", ["supervised learning", "instance-based"],
      "are a family of methods that predict from the labels of the closest training examples.",
      "They classify a point by a majority vote among its nearest stored neighbors.",
      "K-nearest neighbors need no training phase at all, only a fast index for lookups. Distances lose meaning in very high dimensions.",
      ["Euclidean distance", "Curse of dimensionality", "Classification"]),
    t("Perceptron", ["neural networks", "supervised learning"],
      "is a linear classifier trained by nudging its weights after every mistake.",
      "It converges in finitely many updates whenever the classes are linearly separable.",
      "The perceptron is the ancestor of modern neural networks. A single perceptron cannot represent the XOR function.",
      ["Multilayer perceptron", "Neural network", "Classification"]),
    t("Multilayer perceptron", ["neural networks"],
      "is a feedforward neural network with one or more hidden layers of nonlinear units.",
      "It can approximate any continuous function on a bounded region given enough hidden units.",
      "A multilayer perceptron is trained end to end with backpropagation. Width, depth, and regularization jointly control its capacity.",
      ["Perceptron", "Backpropagation", "Activation function"]),
    t("Linear discriminant analysis", ["statistics", "classification"],
      "is a classifier that models each class as a Gaussian with a shared covariance matrix.",
      "It projects the data onto the directions that best separate the class means.",
      "Linear discriminant analysis doubles as a supervised dimensionality reduction. The shared-covariance assumption keeps its boundary linear.",
      ["Classification", "Dimensionality reduction", "Gaussian distribution"]),

    # ---- core concepts ------------------------------------------------------
    t("Supervised learning", ["paradigms"],
      "is the branch of machine learning that fits a mapping from inputs to known target labels.",
      "It covers both classification, where targets are categories, and regression, where targets are numbers.",
      "Supervised learning needs labeled data, which is often the scarcest resource. Label quality caps the quality of the learned model.",
      ["Classification", "Regression analysis", "Unsupervised learning"]),
    t("Unsupervised learning", ["paradigms"],
      "is the branch of machine learning that finds structure in data without any target labels.",
      "It includes clustering, density estimation, and dimensionality reduction.",
      "Evaluating unsupervised learning is notoriously slippery because there is no ground truth. Downstream task performance is the honest yardstick.",
      ["Clustering", "Dimensionality reduction", "Supervised learning"]),
    t("Semi-supervised learning", ["paradigms"],
      "is learning from a small labeled set together with a large pool of unlabeled examples.",
      "It exploits the shape of the unlabeled data to place the decision boundary in low-density regions.",
      "Semi-supervised learning shines when labels are expensive but raw data is cheap. Pseudo-labeling is its simplest working recipe.",
      ["Supervised learning", "Unsupervised learning", "Active learning"]),
    t("Reinforcement learning", ["paradigms"],
      "is learning to act by trial and error so as to maximize a cumulative reward signal.",
      "It frames the world as states, actions, and rewards linked by an unknown transition process.",
      "Reinforcement learning trades data efficiency for generality. Reward design quietly decides what the agent actually learns.",
      ["Markov decision process", "Q-learning", "Policy gradient"]),
    t("Online learning", ["paradigms"],
      "is learning from a stream of examples one at a time, updating the model after each arrival.",
      "It never revisits old data, which keeps memory use constant.",
      "Online learning suits feeds and logs that never stop growing. Regret against the best fixed model is its standard scorecard.",
      ["Stochastic gradient descent", "Concept drift"]),
    t("Transfer learning", ["paradigms"],
      "is reusing a model trained on one task as the starting point for a related task.",
      "It works because early layers learn generic structure that many tasks share.",
      "Fine-tuning a pretrained network is the commonest form of transfer learning. Small target datasets benefit the most from transfer learning.",
      ["Deep learning", "Neural network"]),
    t("Active learning", ["paradigms"],
      "is a training loop in which the model chooses which examples a human should label next.",
      "It queries the points it is most uncertain about, so each label buys maximal information.",
      "Active learning can cut labeling budgets by an order of magnitude. Poorly calibrated uncertainty makes its queries wasteful.",
      ["Semi-supervised learning", "Calibration"]),
    t("Ensemble learning", ["ensembles"],
      "is the practice of combining several models so their errors cancel.",
      "It improves accuracy whenever the member models are individually decent and mutually diverse.",
      "Averaging, voting, and stacking are the standard flavors of ensemble learning. Diversity matters as much as individual skill.",
      ["Bagging", "Boosting", "Random forest"]),
    t("Classification", ["tasks"],
      "is the supervised task of assigning each input to one of a fixed set of categories.",
      "It is scored with measures such as accuracy, precision, recall, and the F1 score.",
      "Binary classification is the best-studied special case. Class imbalance quietly distorts naive training and naive evaluation alike.",
      ["Supervised learning", "F1 score", "Imbalanced data"]),
    t("Regression analysis", ["tasks", "statistics"],
      "is the supervised task of predicting a continuous numeric quantity.",
      "It is usually scored by squared or absolute error on held-out data.",
      "Regression analysis predates machine learning by a century. Heavy-tailed noise argues for absolute rather than squared loss.",
      ["Linear regression", "Mean squared error", "Supervised learning"]),
    t("Clustering", ["tasks", "unsupervised"],
      "is the unsupervised task of grouping examples so that members of a group resemble each other.",
      "It depends entirely on the chosen notion of distance between examples.",
      "Clustering has no single correct answer, only useful ones. Stability under resampling is a practical sanity check.",
      ["K-means clustering", "Hierarchical clustering", "Euclidean distance"]),
    t("Anomaly detection", ["tasks"],
      "is the task of flagging examples that deviate markedly from the bulk of the data.",
      "It is usually trained on normal behavior only, because anomalies are rare and unlabeled.",
      "Fraud screening and fault monitoring are classic anomaly detection settings. False alarms, not misses, dominate its operating cost.",
      ["Imbalanced data", "Kernel density estimation"]),
    t("Generalization", ["theory"],
      "is a model's ability to perform well on data it was not trained on.",
      "It is what separates learning from memorization.",
      "Generalization is estimated with held-out test sets or cross-validation. A gap between training and test scores signals overfitting.",
      ["Overfitting", "Cross-validation", "Test set"]),
    t("Overfitting", ["model selection"],
      "is the failure of a trained model to generalize beyond the data it was fitted on.",
      "This happens when a flexible model memorizes noise instead of structure.",
      "Regularization, early stopping, and more data all push back against overfitting. A widening gap between training and validation error is the telltale symptom of overfitting.",
      ["Underfitting", "Regularization", "Generalization"]),
    t("Underfitting", ["model selection"],
      "is the failure of a model to capture structure that is plainly present in the training data.",
      "This happens when the model family is too rigid or the training stops too early.",
      "High error on the training set itself is the signature of underfitting. Adding capacity or features is the usual cure for underfitting.",
      ["Overfitting", "Bias-variance tradeoff"]),
    t("Bias-variance tradeoff", ["theory", "model selection"],
      "is the decomposition of expected error into systematic bias, sensitivity to the sample, and irreducible noise.",
      "It says that making a model family richer lowers bias but raises variance.",
      "The bias-variance tradeoff explains why bigger is not always better. A model with high bias misses real structure no matter how much data it sees, while high variance means the fit changes wildly from sample to sample.",
      ["Overfitting", "Underfitting", "Generalization"]),
    t("Statistical bias", ["theory", "statistics"],
      "is the systematic difference between an estimator's expected value and the true quantity it estimates.",
      "It persists no matter how much data is collected.",
      "A model with high statistical bias underfits, missing structure the data clearly shows. Deliberately accepting some bias often buys a large variance reduction.",
      ["Bias-variance tradeoff", "Underfitting"]),
    t("Variance", ["theory", "statistics"],
      "is the expected squared deviation of a random quantity from its mean.",
      "It measures how much an estimate would change if the training sample were redrawn.",
      "In learning curves, high variance shows up as a large gap between training and validation error. Averaging independent estimates shrinks variance linearly.",
      ["Bias-variance tradeoff", "Bagging"]),
    t("Inductive bias", ["theory"],
      "is the set of assumptions a learner uses to generalize beyond its training examples.",
      "It is what lets a finite sample pin down one hypothesis out of infinitely many.",
      "Convolutional weight sharing is a famous inductive bias for images. No learner works without some inductive bias.",
      ["Generalization", "Convolutional neural network"]),
    t("Curse of dimensionality", ["theory"],
      "is the collection of phenomena that make high-dimensional spaces hostile to learning.",
      "It makes every point nearly equidistant from every other, starving distance-based methods.",
      "Sample requirements grow exponentially under the curse of dimensionality. Dimensionality reduction and strong priors are the standard escapes.",
      ["Dimensionality reduction", "K-nearest neighbors"]),
    t("Concept drift", ["practice"],
      "is a change over time in the relationship between inputs and targets of a deployed model.",
      "It silently erodes accuracy even though the model itself is unchanged.",
      "Monitoring and periodic retraining are the usual defenses against concept drift. Sudden drift after an upstream change is the easiest kind to catch.",
      ["Online learning", "Generalization"]),

    # ---- optimization and training ------------------------------------------
    t("Loss function", ["optimization"],
      "is the quantity a learning algorithm minimizes to fit its parameters.",
      "It encodes what counts as a mistake and how badly each mistake hurts.",
      "Squared error, cross-entropy, and hinge loss are everyday loss functions. The choice of loss function shapes the learned model as much as the data does.",
      ["Gradient descent", "Mean squared error", "Log loss"]),
    t("Gradient descent", ["optimization"],
      "is an iterative optimizer that steps parameters against the gradient of the loss.",
      "It follows the locally steepest downhill direction with a step size called the learning rate.",
      "Plain gradient descent uses the full dataset for every step. On non-convex surfaces, gradient descent finds a local rather than global minimum.",
      ["Stochastic gradient descent", "Learning rate", "Loss function"]),
    t("Stochastic gradient descent", ["optimization"],
      "is gradient descent that estimates each step from a single example or a small batch.",
      "It trades noisy steps for vastly cheaper iterations.",
      "The noise in stochastic gradient descent doubles as a regularizer. Learning-rate schedules decide whether it converges or just wanders.",
      ["Gradient descent", "Learning rate", "Online learning"]),
    t("Momentum", ["optimization"],
      "is an optimizer modification that accumulates an exponentially decaying average of past gradients.",
      "It speeds travel along shallow valleys and damps oscillation across steep walls.",
      "Momentum is controlled by a single decay coefficient, commonly set near nine tenths. Most deep-learning optimizers build on momentum.",
      ["Gradient descent", "Adam optimizer"]),
    t("Adam optimizer", ["optimization"],
      "is a stochastic optimizer that keeps running estimates of both the mean and the variance of each gradient coordinate.",
      "It scales every parameter's step by the inverse square root of its recent gradient variance.",
      "The adam optimizer is the default choice for training deep networks. Its default settings work surprisingly often.",
      ["Momentum", "Stochastic gradient descent"]),
    t("Learning rate", ["optimization", "hyperparameters"],
      "is the step-size hyperparameter that scales every parameter update during training.",
      "It is the single most influential knob in gradient-based training.",
      "Too high a learning rate diverges, too low crawls. Warmup followed by decay is the standard learning rate schedule for deep networks.",
      ["Gradient descent", "Hyperparameter"]),
    t("Backpropagation", ["neural networks", "optimization"],
      "is the algorithm that computes the gradient of a network's loss with respect to every weight.",
      "It applies the chain rule backward through the computation graph, reusing intermediate results.",
      "Backpropagation costs about as much as two forward passes. Every modern deep-learning framework automates backpropagation.",
      ["Neural network", "Gradient descent", "Vanishing gradient"]),
    t("Weight initialization", ["neural networks"],
      "is the scheme for choosing a network's starting parameter values before training.",
      "It sets the initial scale of activations and gradients flowing through the layers.",
      "Bad weight initialization stalls training before it begins. Variance-preserving schemes keep signals healthy in deep stacks.",
      ["Vanishing gradient", "Neural network"]),
    t("Vanishing gradient", ["neural networks"],
      "is the exponential shrinking of gradients as they propagate back through many layers.",
      "It leaves early layers learning at a glacial pace or not at all.",
      "Gating, careful initialization, and skip connections fight the vanishing gradient. The mirror-image problem is the exploding gradient.",
      ["Backpropagation", "Long short-term memory", "Weight initialization"]),
    t("Batch normalization", ["neural networks"],
      "is a layer that standardizes its inputs using statistics of the current training batch.",
      "It stabilizes and accelerates training by keeping activation scales steady.",
      "Batch normalization lets much higher learning rates survive. At inference time it switches to frozen population statistics.",
      ["Neural network", "Learning rate"]),
    t("Dropout", ["neural networks", "regularization"],
      "is a regularizer that randomly zeroes a fraction of units during each training step.",
      "It prevents units from co-adapting, because no unit can rely on any particular partner being present.",
      "Dropout approximates training an ensemble of subnetworks that share weights. At test time dropout is switched off and activations are rescaled.",
      ["Regularization", "Ensemble learning", "Neural network"]),
    t("Early stopping", ["regularization", "model selection"],
      "is halting training when validation error stops improving.",
      "It uses the validation curve itself as the capacity control.",
      "Early stopping is the cheapest regularizer in deep learning. Patience, the number of flat epochs tolerated, is its only real knob.",
      ["Overfitting", "Validation set", "Regularization"]),
    t("Regularization", ["model selection"],
      "is any modification to training that trades fit on the training set for better generalization.",
      "It penalizes complexity so the model prefers simpler explanations compatible with the data.",
      "Weight penalties, dropout, early stopping, and data augmentation are all regularization. The right amount of regularization is found on a validation set, because too much causes underfitting.",
      ["Overfitting", "Ridge regression", "Dropout"]),
    t("Hyperparameter", ["model selection"],
      "is a configuration value fixed before training rather than learned from data.",
      "It must be tuned on a validation set, never on the test set.",
      "Depth, learning rate, and penalty strength are typical hyperparameters. Hyperparameter choices often matter more than the algorithm itself.",
      ["Grid search", "Random search", "Validation set"]),
    t("Grid search", ["model selection"],
      "is hyperparameter tuning by exhaustively trying every combination on a predefined grid.",
      "It is trivially parallel but grows exponentially with the number of knobs.",
      "Grid search wastes effort on dimensions that turn out not to matter. Beyond two or three hyperparameters, random search beats grid search.",
      ["Random search", "Hyperparameter", "Cross-validation"]),
    t("Random search", ["model selection"],
      "is hyperparameter tuning by sampling configurations at random from specified ranges.",
      "It covers each individual dimension far more densely than a grid of the same budget.",
      "Random search is the recommended simple baseline for tuning. Log-uniform ranges suit scale-like knobs such as the learning rate.",
      ["Grid search", "Bayesian optimization", "Hyperparameter"]),
    t("Bayesian optimization", ["model selection"],
      "is hyperparameter tuning that fits a probabilistic surrogate to past trials and queries where improvement is most promising.",
      "It balances exploring uncertain regions against exploiting known good ones.",
      "Bayesian optimization earns its complexity when each trial is expensive. Gaussian processes are the classic surrogate inside bayesian optimization.",
      ["Random search", "Hyperparameter", "Exploration-exploitation tradeoff"]),
    t("Learning curve", ["model selection"],
      "is a plot of model performance against training set size or training time.",
      "It reveals whether more data, more capacity, or more patience would help.",
      "Converging training and validation curves at poor performance indicate bias. A persistent gap between learning curves indicates variance.",
      ["Bias-variance tradeoff", "Overfitting"]),

    # ---- trees and ensembles internals --------------------------------------
    t("Gini impurity", ["trees"],
      "is a node-purity measure equal to the chance that two random draws from the node disagree in label.",
      "It reaches zero exactly when a node holds a single class.",
      "Classification trees pick splits that minimize child-weighted gini impurity. Gini impurity and entropy almost always agree on the best split.",
      ["Decision tree", "Entropy", "Information gain"]),
    t("Entropy", ["trees", "information theory"],
      "is the expected number of bits needed to encode a random outcome.",
      "It peaks when all outcomes are equally likely and vanishes when one outcome is certain.",
      "Entropy-based splitting yields the information gain criterion for trees. Cross-entropy loss generalizes entropy to model evaluation.",
      ["Information gain", "Gini impurity", "Log loss"]),
    t("Information gain", ["trees", "information theory"],
      "is the reduction in entropy achieved by splitting a dataset on a feature.",
      "It quantifies how much knowing one feature tells about the label.",
      "Decision trees rank candidate splits by information gain. Many-valued features inflate information gain unless it is normalized.",
      ["Entropy", "Decision tree"]),
    t("Pruning", ["trees", "regularization"],
      "is the removal of branches from a fitted tree to improve generalization.",
      "It collapses subtrees whose complexity is not paid for by validation accuracy.",
      "Pre-pruning stops growth early, post-pruning cuts a full tree back. Pruning is the tree world's version of regularization.",
      ["Decision tree", "Regularization", "Overfitting"]),
    t("Bagging", ["ensembles"],
      "is ensemble training on bootstrap resamples of the data with predictions averaged.",
      "It reduces variance while leaving bias essentially untouched.",
      "Bagging helps most with unstable learners such as deep trees. The random forest is bagging plus random feature subsets.",
      ["Bootstrap sampling", "Random forest", "Variance"]),
    t("Boosting", ["ensembles"],
      "is ensemble training that adds weak learners sequentially, each focused on the current model's mistakes.",
      "It drives training error down geometrically while the ensemble stays simple at each step.",
      "Boosting reduces bias where bagging reduces variance. Gradient boosting is its modern, loss-agnostic formulation.",
      ["AdaBoost", "Gradient boosting", "Bagging"]),
    t("Bootstrap sampling", ["statistics", "ensembles"],
      "is resampling a dataset with replacement to the original size.",
      "It leaves out roughly a third of the distinct examples in every resample.",
      "Bootstrap sampling underlies bagging and the bootstrap confidence interval. The left-out examples provide free validation data.",
      ["Bagging", "Out-of-bag error", "Confidence interval"]),
    t("Out-of-bag error", ["ensembles", "evaluation"],
      "is the error of a bagged ensemble measured, for each example, using only the trees that never saw it.",
      "It provides an honest generalization estimate without a separate validation split.",
      "Out-of-bag error closely tracks cross-validation for random forests. Monitoring out-of-bag error is effectively free during training.",
      ["Bagging", "Random forest", "Cross-validation"]),
    t("Feature importance", ["trees", "interpretation"],
      "is a score attributing a trained model's predictive power to individual input features.",
      "It is computed in forests from impurity reductions or from permutation damage.",
      "Correlated inputs split feature importance between them. Permutation-based feature importance is the more trustworthy variant.",
      ["Random forest", "Feature selection"]),

    # ---- data and preprocessing ---------------------------------------------
    t("Feature engineering", ["preprocessing"],
      "is the design of informative input representations from raw data.",
      "It injects domain knowledge that the learning algorithm cannot discover on its own.",
      "Good feature engineering routinely beats a fancier model. Deep learning automates parts of feature engineering but not the judgment.",
      ["Feature selection", "Feature scaling"]),
    t("Feature selection", ["preprocessing"],
      "is choosing a subset of input features to train on.",
      "It removes noise, speeds training, and clarifies what drives predictions.",
      "Filter, wrapper, and embedded schemes are the three families of feature selection. The lasso performs feature selection as a side effect.",
      ["Lasso regression", "Feature importance", "Feature engineering"]),
    t("Feature scaling", ["preprocessing"],
      "is the transformation of features to comparable numeric ranges.",
      "It keeps large-valued features from dominating distances and gradients.",
      "Standardization and min-max scaling are the workhorse forms of feature scaling. Tree-based models are indifferent to feature scaling.",
      ["Feature engineering", "Gradient descent"]),
    t("One-hot encoding", ["preprocessing"],
      "is the representation of a categorical value as a vector with a single one and zeros elsewhere.",
      "It avoids imposing a spurious numeric order on categories.",
      "One-hot encoding explodes dimensionality for high-cardinality fields. Learned embeddings are the scalable alternative to one-hot encoding.",
      ["Feature engineering", "Word embedding"]),
    t("Dimensionality reduction", ["unsupervised", "preprocessing"],
      "is the mapping of data into fewer dimensions while preserving its important structure.",
      "It fights the curse of dimensionality and enables visualization.",
      "Principal component analysis is the linear workhorse of dimensionality reduction. Nonlinear methods preserve neighborhoods instead of global geometry.",
      ["Principal component analysis", "Curse of dimensionality"]),
    t("Principal component analysis", ["unsupervised", "statistics"],
      "is a linear transform onto orthogonal directions of maximal variance.",
      "It ranks those directions so the first few capture most of the data's spread.",
      "Principal component analysis is computed from the covariance matrix or a singular value decomposition. Components are hard to interpret because each mixes every original feature.",
      ["Dimensionality reduction", "Singular value decomposition", "Variance"]),
    t("Singular value decomposition", ["linear algebra"],
      "is the factorization of any matrix into rotations around a diagonal of singular values.",
      "It exposes the best low-rank approximation of the matrix at every rank simultaneously.",
      "The singular value decomposition underlies principal component analysis and latent semantic analysis. Truncating small singular values denoises the data.",
      ["Principal component analysis", "Latent semantic analysis"]),
    t("Data augmentation", ["preprocessing", "regularization"],
      "is the expansion of a training set with label-preserving transformations of its examples.",
      "It teaches invariances by example rather than by architecture.",
      "Crops, flips, and noise are standard image data augmentation. Augmentation policies can themselves be learned.",
      ["Regularization", "Overfitting"]),
    t("Imbalanced data", ["practice"],
      "is a training set in which some classes are far rarer than others.",
      "It biases both training and accuracy-based evaluation toward the majority class.",
      "Resampling, reweighting, and threshold tuning are the standard responses to imbalanced data. Precision and recall reveal what accuracy hides on imbalanced data.",
      ["Synthetic minority oversampling", "Precision", "Recall"]),
    t("Synthetic minority oversampling", ["preprocessing"],
      "is the generation of new minority-class examples by interpolating between real neighboring ones.",
      "It places each synthetic point on the straight segment between a minority example and one of its nearest minority neighbors.",
      "Synthetic minority oversampling balances classes without cloning duplicates. Naive use can blur legitimate class boundaries.",
      ["Imbalanced data", "K-nearest neighbors"]),
    t("Cross-validation", ["evaluation", "model selection"],
      "is performance estimation by rotating which fold of the data is held out for testing.",
      "It uses every example for both training and evaluation, just never at the same time.",
      "Ten folds is the everyday default for cross-validation, with more folds for small samples. Fold results also yield a confidence interval for the score.",
      ["Generalization", "Validation set", "Confidence interval"]),
    t("Training set", ["evaluation"],
      "is the portion of the data used to fit model parameters.",
      "It is the only data the learning algorithm is allowed to see during fitting.",
      "Errors on the training set flatter the model. A training set that leaks test information invalidates the whole evaluation.",
      ["Validation set", "Test set", "Data leakage"]),
    t("Validation set", ["evaluation"],
      "is held-out data used to tune hyperparameters and to decide when to stop training.",
      "It stands in for unseen data during model development.",
      "Repeated peeking slowly overfits the validation set. Cross-validation recycles scarce data into many validation sets.",
      ["Training set", "Test set", "Early stopping"]),
    t("Test set", ["evaluation"],
      "is data locked away until the very end to give an unbiased measurement of final performance.",
      "It must never influence any modeling decision.",
      "One honest evaluation is all a test set can give. Reusing a test set across many papers quietly erodes its validity.",
      ["Training set", "Validation set", "Generalization"]),
    t("Data leakage", ["practice"],
      "is the accidental inclusion of information in training that will not exist at prediction time.",
      "It inflates offline scores that then collapse in production.",
      "Target-derived features and pre-split preprocessing are classic data leakage. Leakage hunts should precede any celebration of a great score.",
      ["Test set", "Feature engineering"]),
    t("Imputation", ["preprocessing"],
      "is the filling of missing feature values with plausible substitutes.",
      "It keeps incomplete records usable instead of discarding them.",
      "Mean imputation is simple but distorts variances. Model-based imputation predicts each missing value from the observed ones.",
      ["Feature engineering", "Missing data"]),

    # ---- evaluation metrics -------------------------------------------------
    t("Accuracy", ["evaluation"],
      "is the fraction of predictions that are exactly correct.",
      "It is the most intuitive and most abused classification metric.",
      "On imbalanced data, high accuracy can coexist with a useless model. Balanced accuracy averages per-class recalls to compensate.",
      ["Precision", "Recall", "Imbalanced data"]),
    t("Precision", ["evaluation"],
      "is the fraction of predicted positives that are truly positive.",
      "It measures how trustworthy a positive call is.",
      "Precision matters when acting on a false alarm is expensive. Raising the decision threshold typically trades recall for precision.",
      ["Recall", "F1 score", "Confusion matrix"]),
    t("Recall", ["evaluation"],
      "is the fraction of true positives that the model successfully finds.",
      "It measures how little the model misses.",
      "Recall matters when a miss is costlier than a false alarm. Screening applications run at high recall and modest precision.",
      ["Precision", "F1 score", "Confusion matrix"]),
    t("F1 score", ["evaluation"],
      "is the harmonic mean of precision and recall.",
      "It collapses the precision-recall tradeoff into a single number that punishes imbalance between the two.",
      "The F1 score ignores true negatives entirely. Micro and macro averaging extend the F1 score to many classes.",
      ["Precision", "Recall", "Imbalanced data"]),
    t("Confusion matrix", ["evaluation"],
      "is the table of prediction counts broken down by true class and predicted class.",
      "It holds every threshold-level classification metric as a simple ratio of its cells.",
      "Reading a confusion matrix reveals which classes the model conflates. Off-diagonal mass is where the mistakes live.",
      ["Precision", "Recall", "Accuracy"]),
    t("ROC curve", ["evaluation"],
      "is the plot of true-positive rate against false-positive rate as the decision threshold sweeps.",
      "It summarizes ranking quality independent of any single threshold.",
      "The area under the ROC curve is the chance a random positive outranks a random negative. Severe imbalance makes the ROC curve look rosier than precision-recall curves.",
      ["Precision", "Recall", "Classification"]),
    t("Mean squared error", ["evaluation"],
      "is the average of squared differences between predictions and targets.",
      "It penalizes large mistakes quadratically, so outliers dominate it.",
      "Minimizing mean squared error yields the conditional mean as the ideal predictor. Its square root restores the original units.",
      ["Regression analysis", "Mean absolute error", "Loss function"]),
    t("Mean absolute error", ["evaluation"],
      "is the average of absolute differences between predictions and targets.",
      "It weighs every unit of error equally, making it robust to outliers.",
      "Minimizing mean absolute error yields the conditional median. Mean absolute error reads directly in the target's own units.",
      ["Mean squared error", "Regression analysis"]),
    t("Log loss", ["evaluation"],
      "is the negative log-likelihood of the true labels under the model's predicted probabilities.",
      "It punishes confident wrong predictions brutally and rewards honest uncertainty.",
      "Log loss is the training objective of logistic regression. A model can have good accuracy and terrible log loss at the same time.",
      ["Logistic regression", "Calibration", "Entropy"]),
    t("Calibration", ["evaluation"],
      "is the agreement between predicted probabilities and observed frequencies.",
      "It means that events forecast at seventy percent happen about seventy percent of the time.",
      "Modern neural networks are often overconfident and need calibration. Reliability diagrams and temperature scaling diagnose and repair calibration.",
      ["Log loss", "Logistic regression"]),

    # ---- probability and statistics -----------------------------------------
    t("Bayes theorem", ["probabilistic", "statistics"],
      "is the rule for updating a probability in light of new evidence.",
      "It converts a prior belief and a likelihood into a posterior belief.",
      "Bayes theorem is the engine behind naive Bayes and Bayesian inference. Base-rate neglect is the classic human failure it corrects.",
      ["Naive Bayes", "Bayesian inference", "Prior probability"]),
    t("Maximum likelihood estimation", ["statistics"],
      "is parameter fitting by maximizing the probability of the observed data.",
      "It turns estimation into optimization of the log-likelihood.",
      "Least squares and cross-entropy training are maximum likelihood estimation in disguise. With little data, maximum likelihood estimation overfits and priors help.",
      ["Logistic regression", "Log loss", "Bayesian inference"]),
    t("Expectation maximization", ["statistics", "unsupervised"],
      "is an iterative scheme for maximum likelihood when some variables are unobserved.",
      "It alternates between inferring the hidden variables and refitting the parameters.",
      "Expectation maximization trains Gaussian mixtures and hidden Markov models. Every iteration of expectation maximization raises the likelihood, but only to a local peak.",
      ["Gaussian mixture model", "Hidden Markov model", "Maximum likelihood estimation"]),
    t("Gaussian distribution", ["statistics"],
      "is the bell-shaped distribution characterized entirely by a mean and a variance.",
      "It arises whenever many small independent effects add together.",
      "The central limit theorem explains the Gaussian distribution's ubiquity. Real data often has heavier tails than the Gaussian distribution admits.",
      ["Central limit theorem", "Variance"]),
    t("Binomial distribution", ["statistics"],
      "is the distribution of the number of successes in a fixed number of independent yes-or-no trials.",
      "It is governed by just the trial count and the per-trial success probability.",
      "Exact confidence intervals for proportions come from inverting the binomial distribution. Learning-gain estimates in tutoring studies are binomial proportions.",
      ["Confidence interval", "Hypothesis testing"]),
    t("Central limit theorem", ["statistics"],
      "is the result that averages of many independent draws become approximately Gaussian.",
      "It holds regardless of the shape of the original distribution, within mild conditions.",
      "The central limit theorem justifies z-tests and normal confidence intervals. Heavy tails and dependence slow the convergence it promises.",
      ["Gaussian distribution", "Hypothesis testing"]),
    t("Law of large numbers", ["statistics"],
      "is the guarantee that sample averages converge to the true mean as samples grow.",
      "It says nothing about how fast, only that convergence eventually happens.",
      "Monte Carlo methods lean entirely on the law of large numbers. Confidence intervals quantify the convergence it leaves unspecified.",
      ["Monte Carlo method", "Central limit theorem"]),
    t("Markov chain", ["probabilistic"],
      "is a random process whose next state depends only on its current state.",
      "It forgets its entire past beyond the present moment.",
      "A Markov chain is specified by a state set and a transition matrix. Long-run behavior is captured by its stationary distribution.",
      ["Hidden Markov model", "Markov decision process"]),
    t("Hidden Markov model", ["probabilistic", "nlp"],
      "is a Markov chain whose states are unobserved and emit visible symbols.",
      "It lets probabilistic reasoning recover the hidden state sequence from emissions alone.",
      "Speech and part-of-speech tagging were the flagship hidden Markov model applications. Training uses expectation maximization under the name Baum-Welch.",
      ["Markov chain", "Expectation maximization", "Part-of-speech tagging"]),
    t("Monte Carlo method", ["probabilistic"],
      "is estimation by averaging over random samples instead of computing integrals exactly.",
      "It converges at a rate independent of dimension, unlike grid-based quadrature.",
      "Monte Carlo methods price options, plan in games, and power Bayesian inference. Variance reduction craft determines their practical cost.",
      ["Law of large numbers", "Bayesian inference"]),
    t("Bayesian inference", ["probabilistic", "statistics"],
      "is the treatment of unknown parameters as random variables with distributions updated by data.",
      "It reports entire posterior distributions instead of single point estimates.",
      "Bayesian inference quantifies uncertainty coherently but can be computationally heavy. Markov chain Monte Carlo makes posteriors tractable.",
      ["Bayes theorem", "Monte Carlo method", "Prior probability"]),
    t("Prior probability", ["probabilistic"],
      "is the belief assigned to a hypothesis before the current data is seen.",
      "It regularizes inference exactly where data is scarce.",
      "An informative prior probability encodes domain knowledge, a flat one feigns ignorance. With enough data, reasonable priors wash out.",
      ["Bayes theorem", "Bayesian inference", "Regularization"]),
    t("Kernel density estimation", ["statistics", "unsupervised"],
      "is the estimation of a probability density by placing a small bump on every observation.",
      "It smooths the empirical distribution with a bandwidth-controlled kernel.",
      "Bandwidth choice dominates kernel density estimation quality. In high dimensions, kernel density estimation starves for data.",
      ["Anomaly detection", "Curse of dimensionality"]),
    t("Confidence interval", ["statistics", "evaluation"],
      "is a data-derived range built to contain the true parameter value a stated share of the time.",
      "It widens with noise and narrows with sample size.",
      "A ninety-five percent confidence interval misses the truth once in twenty experiments by design. Exact intervals for small-sample proportions come from the beta distribution.",
      ["Binomial distribution", "Hypothesis testing", "Cross-validation"]),
    t("Hypothesis testing", ["statistics"],
      "is the framework for deciding whether observed data is surprising under a default assumption.",
      "It controls the rate of false alarms at a preset significance level.",
      "The two-proportion z-test is the standard hypothesis test for comparing success rates of two groups. Statistical significance is not the same thing as practical importance.",
      ["P-value", "Confidence interval", "Central limit theorem"]),
    t("P-value", ["statistics"],
      "is the probability, computed under the null hypothesis, of data at least as extreme as observed.",
      "It measures surprise, not the size or importance of an effect.",
      "A p-value below the chosen significance level rejects the null hypothesis. Hunting across many tests for a small p-value invalidates its meaning.",
      ["Hypothesis testing", "Confidence interval"]),

    # ---- neural and deep ----------------------------------------------------
    t("Neural network", ["neural networks"],
      "is a model built from layers of simple units, each computing a weighted sum passed through a nonlinearity.",
      "It learns its internal representation and its predictor jointly from data.",
      "Depth gives a neural network its expressive power and its training difficulties. Modern hardware made large neural networks practical.",
      ["Multilayer perceptron", "Deep learning", "Backpropagation"]),
    t("Deep learning", ["neural networks"],
      "is machine learning with neural networks of many layers trained end to end.",
      "It replaces hand-crafted features with representations learned from raw data.",
      "Deep learning took over vision, speech, and language within a decade. Data and compute appetite remain deep learning's entry fee.",
      ["Neural network", "Convolutional neural network", "Transformer"]),
    t("Convolutional neural network", ["neural networks", "vision"],
      "is a neural network whose layers slide small shared filters across their input.",
      "It encodes the prior that useful patterns are local and can appear anywhere in the image.",
      "The convolutional neural network dethroned hand-crafted vision features. Pooling grants its detections a tolerance to small shifts.",
      ["Neural network", "Inductive bias", "Deep learning"]),
    t("Recurrent neural network", ["neural networks", "sequences"],
      "is a neural network that processes sequences by carrying a hidden state from step to step.",
      "It shares its weights across time, so sequence length is unbounded in principle.",
      "Plain recurrent neural networks struggle with long-range dependencies. Gated variants and transformers took over recurrent neural network territory.",
      ["Long short-term memory", "Vanishing gradient", "Transformer"]),
    t("Long short-term memory", ["neural networks", "sequences"],
      "is a recurrent architecture with gated cells that preserve information over long spans.",
      "It multiplies signals by learned gates that decide what to keep, write, and expose.",
      "Long short-term memory networks tamed the vanishing gradient for sequences. For years they powered translation and speech systems.",
      ["Recurrent neural network", "Vanishing gradient"]),
    t("Attention mechanism", ["neural networks", "sequences"],
      "is a differentiable lookup that lets each position gather information from all others, weighted by relevance.",
      "It computes those weights from learned query and key vectors.",
      "The attention mechanism freed sequence models from fixed-length bottlenecks. Attention weights double as a rough, imperfect explanation.",
      ["Transformer", "Recurrent neural network"]),
    t("Transformer", ["neural networks", "sequences"],
      "is a sequence architecture built entirely from attention and feedforward blocks, with no recurrence.",
      "It processes all positions in parallel, which unlocks massive training throughput.",
      "The transformer became the backbone of modern language models. Position information must be injected explicitly into a transformer.",
      ["Attention mechanism", "Deep learning", "Language model"]),
    t("Autoencoder", ["neural networks", "unsupervised"],
      "is a network trained to reconstruct its input through a narrow internal bottleneck.",
      "It learns a compressed representation as a byproduct of reconstruction.",
      "Autoencoders perform nonlinear dimensionality reduction. Reconstruction error turns an autoencoder into an anomaly detector.",
      ["Dimensionality reduction", "Anomaly detection", "Variational autoencoder"]),
    t("Variational autoencoder", ["neural networks", "generative"],
      "is an autoencoder trained as a probabilistic model, with a distribution over its latent codes.",
      "It regularizes the latent space so that nearby codes decode to similar outputs.",
      "A variational autoencoder can generate new examples by decoding random codes. Sample sharpness lags adversarial methods.",
      ["Autoencoder", "Generative adversarial network", "Bayesian inference"]),
    t("Generative adversarial network", ["neural networks", "generative"],
      "is a pair of networks trained as adversaries, one forging samples and one judging authenticity.",
      "It improves the generator precisely as fast as the critic learns to catch it.",
      "Generative adversarial networks produce strikingly sharp images. Training instability and mode collapse are their notorious failure modes.",
      ["Variational autoencoder", "Deep learning"]),
    t("Activation function", ["neural networks"],
      "is the nonlinearity applied to each unit's weighted sum in a neural network.",
      "It is what lets stacked layers express more than a single linear map.",
      "The rectified linear unit displaced the sigmoid as the default activation function. Saturating activation functions invite vanishing gradients.",
      ["Rectified linear unit", "Sigmoid function", "Neural network"]),
    t("Rectified linear unit", ["neural networks"],
      "is the activation function that outputs its input when positive and zero otherwise.",
      "It keeps gradients alive on its active side and is nearly free to compute.",
      "The rectified linear unit made very deep networks trainable. Units stuck on the zero side are called dead rectified linear units.",
      ["Activation function", "Vanishing gradient"]),
    t("Sigmoid function", ["neural networks", "statistics"],
      "is the S-shaped squashing function mapping any real number into the open unit interval.",
      "It turns raw scores into quantities readable as probabilities.",
      "Logistic regression applies a sigmoid function to a linear score. As a hidden activation the sigmoid function saturates and slows learning.",
      ["Logistic regression", "Activation function", "Softmax function"]),
    t("Softmax function", ["neural networks"],
      "is the map from a vector of scores to a probability distribution over classes.",
      "It exponentiates each score and normalizes, so raising one score lowers every other probability.",
      "The softmax function is the standard output layer for multiclass models. A temperature parameter sharpens or flattens softmax outputs.",
      ["Sigmoid function", "Classification", "Log loss"]),
    t("Word embedding", ["nlp"],
      "is a dense vector representation of a word learned from its usage contexts.",
      "It places words with similar meanings near each other in vector space.",
      "Arithmetic on word embeddings captures loose analogies. Contextual models superseded static word embeddings for most tasks.",
      ["Word2vec", "Language model", "One-hot encoding"]),
    t("Word2vec", ["nlp"],
      "is a family of shallow networks that learn word embeddings by predicting words from their neighbors.",
      "It comes in skip-gram and continuous bag-of-words flavors.",
      "Word2vec made large-scale word embeddings cheap to train. Negative sampling is the trick that makes word2vec fast.",
      ["Word embedding", "Language model"]),

    # ---- NLP and information retrieval --------------------------------------
    t("Natural language processing", ["nlp"],
      "is the field concerned with computational understanding and generation of human language.",
      "It spans tasks from spelling correction to open-ended dialogue.",
      "Modern natural language processing is dominated by pretrained transformers. Evaluation remains the field's hardest open problem.",
      ["Language model", "Tokenization", "Transformer"]),
    t("Tokenization", ["nlp"],
      "is the segmentation of raw text into the units a model will treat as atoms.",
      "It decides what the model can and cannot see about spelling and word structure.",
      "Word, character, and subword schemes are the main styles of tokenization. Subword tokenization balances vocabulary size against sequence length.",
      ["Natural language processing", "N-gram model"]),
    t("Stemming", ["nlp"],
      "is the crude chopping of word endings to merge inflected forms.",
      "It maps related surface forms onto one shared stem, at some cost in precision.",
      "Search engines use stemming so that queries match morphological variants. Stemming errors conflate words that merely look related.",
      ["Lemmatization", "Tokenization"]),
    t("Lemmatization", ["nlp"],
      "is the reduction of each word to its dictionary form using vocabulary and grammar.",
      "It requires knowing a word's part of speech to resolve ambiguous forms.",
      "Lemmatization is slower but cleaner than stemming. Morphologically rich languages benefit from lemmatization the most.",
      ["Stemming", "Part-of-speech tagging"]),
    t("Stop words", ["nlp"],
      "are extremely common words filtered out before some text-processing steps.",
      "They carry grammatical glue rather than topical content.",
      "Typical stop words include articles, prepositions, and pronouns. Removing stop words shrinks indexes but can break phrase queries.",
      ["Tf-idf weighting", "Tokenization"]),
    t("N-gram model", ["nlp"],
      "is a language model that predicts each word from the previous few words only.",
      "It estimates those conditional probabilities from counts in a training corpus.",
      "Unseen sequences force every n-gram model to smooth its counts. Add-k smoothing lends a little probability mass to every possible continuation.",
      ["Language model", "Tokenization"]),
    t("Language model", ["nlp"],
      "is a probability distribution over sequences of words or tokens.",
      "It scores fluency, which makes it useful far beyond plain generation.",
      "Language models rank speech hypotheses, correct spelling, and drive chat systems. Scale turned the language model into the center of natural language processing.",
      ["N-gram model", "Transformer", "Natural language processing"]),
    t("Bag-of-words model", ["nlp"],
      "is the representation of a document as its word counts with order discarded.",
      "It trades all syntax away for simplicity and speed.",
      "The bag-of-words model plus a linear classifier is a classic text baseline. Phrase meaning and negation are invisible to a bag-of-words model.",
      ["Tf-idf weighting", "Naive Bayes", "Tokenization"]),
    t("Tf-idf weighting", ["nlp", "information retrieval"],
      "is the scoring of a term in a document by its frequency there, discounted by its commonness across documents.",
      "It boosts words that characterize a document and mutes words that appear everywhere.",
      "Tf-idf weighting remains a strong baseline for search and document similarity. Cosine similarity over tf-idf vectors compares texts of unequal length fairly.",
      ["Cosine similarity", "Bag-of-words model", "Stop words"]),
    t("Cosine similarity", ["information retrieval", "geometry"],
      "is the similarity of two vectors measured by the cosine of the angle between them.",
      "It ignores vector length, comparing direction only.",
      "Cosine similarity is the default for comparing text vectors. On centered data, cosine similarity coincides with correlation.",
      ["Tf-idf weighting", "Euclidean distance", "Word embedding"]),
    t("Latent semantic analysis", ["nlp", "information retrieval"],
      "is the discovery of topic-like structure by low-rank factorization of a term-document matrix.",
      "It places words and documents in one shared low-dimensional space.",
      "Latent semantic analysis matches queries to documents that share no literal words. The singular value decomposition does its heavy lifting.",
      ["Singular value decomposition", "Topic modeling", "Tf-idf weighting"]),
    t("Named entity recognition", ["nlp"],
      "is the tagging of text spans that mention people, places, organizations, and similar entities.",
      "It turns raw text into structured handles ready for linking and search.",
      "Named entity recognition is a standard sequence-labeling benchmark. Ambiguous capitalization makes named entity recognition harder than it looks.",
      ["Part-of-speech tagging", "Natural language processing"]),
    t("Part-of-speech tagging", ["nlp"],
      "is the labeling of each word with its grammatical category in context.",
      "It resolves lexical ambiguity, since the same spelling may be a noun here and a verb there.",
      "Part-of-speech tagging was an early victory for hidden Markov models. Accurate part-of-speech tagging feeds parsing and lemmatization.",
      ["Hidden Markov model", "Lemmatization"]),
    t("Sentence segmentation", ["nlp"],
      "is the splitting of running text into individual sentences.",
      "It looks trivial until abbreviations, initials, and ellipses enter the picture.",
      "Downstream summarization inherits every sentence segmentation mistake. Learned segmenters beat period-splitting rules on messy text.",
      ["Tokenization", "Natural language processing"]),

    # ---- clustering and unsupervised ----------------------------------------
    t("K-means clustering", ["unsupervised", "clustering"],
      "is the partitioning of data into a chosen number of clusters around movable centers.",
      "It alternates between assigning points to their nearest center and recentering on the assignments.",
      "K-means clustering is fast, simple, and biased toward round clusters of similar size. Several random restarts guard against bad local minima.",
      ["Clustering", "Expectation maximization", "Euclidean distance"]),
    t("Hierarchical clustering", ["unsupervised", "clustering"],
      "is clustering that builds a tree of nested groupings rather than one flat partition.",
      "It either merges the closest clusters bottom-up or splits the loosest cluster top-down.",
      "Cutting the tree at any height yields a clustering of that granularity. The linkage rule shapes hierarchical clustering as much as the distance does.",
      ["Clustering", "K-means clustering"]),
    t("DBSCAN", ["unsupervised", "clustering"],
      "is a clustering algorithm that grows clusters from points whose neighborhoods are dense enough.",
      "It discovers the number of clusters on its own and labels sparse points as noise.",
      "DBSCAN finds arbitrarily shaped clusters that defeat k-means. One global density threshold is DBSCAN's main limitation.",
      ["Clustering", "K-means clustering", "Anomaly detection"]),
    t("Gaussian mixture model", ["unsupervised", "probabilistic"],
      "is a density model that writes the data distribution as a weighted sum of Gaussians.",
      "It assigns each point soft responsibilities rather than hard cluster labels.",
      "A Gaussian mixture model generalizes k-means to ellipsoidal, overlapping clusters. Expectation maximization fits Gaussian mixture models.",
      ["Expectation maximization", "K-means clustering", "Gaussian distribution"]),
    t("Topic modeling", ["nlp", "unsupervised"],
      "is the unsupervised discovery of recurring themes across a collection of documents.",
      "It describes each document as a mixture of a small number of corpus-wide topics.",
      "Topic modeling summarizes archives too large to read. Latent Dirichlet allocation is its best-known instance.",
      ["Latent Dirichlet allocation", "Latent semantic analysis", "Clustering"]),
    t("Latent Dirichlet allocation", ["nlp", "unsupervised"],
      "is a generative topic model in which documents mix topics and topics mix words.",
      "It infers both mixtures jointly from word counts alone.",
      "Latent Dirichlet allocation made topic modeling a household tool. Its topics need human labels to become interpretable.",
      ["Topic modeling", "Bayesian inference"]),

    # ---- reinforcement learning ---------------------------------------------
    t("Markov decision process", ["reinforcement learning"],
      "is the formal model of sequential decision making with states, actions, transitions, and rewards.",
      "It assumes the next state depends only on the current state and the chosen action.",
      "Reinforcement learning algorithms are defined against a Markov decision process. Partial observability breaks its central assumption.",
      ["Markov chain", "Reinforcement learning"]),
    t("Q-learning", ["reinforcement learning"],
      "is a reinforcement learning algorithm that estimates the long-run value of each action in each state.",
      "It updates those estimates from experienced rewards without needing a model of the environment.",
      "Q-learning converges to optimal values under sufficient exploration. Deep variants replace its lookup table with a neural network.",
      ["Reinforcement learning", "Temporal difference learning", "Markov decision process"]),
    t("Policy gradient", ["reinforcement learning"],
      "is a family of reinforcement learning methods that adjust a parameterized policy directly along the gradient of expected reward.",
      "It handles continuous action spaces that value-table methods cannot.",
      "Policy gradient estimates are notoriously high variance. Baselines and trust regions are the standard stabilizers.",
      ["Reinforcement learning", "Q-learning", "Variance"]),
    t("Temporal difference learning", ["reinforcement learning"],
      "is value estimation that updates predictions toward later, better-informed predictions.",
      "It learns before an episode even finishes, bootstrapping from its own current estimates.",
      "Temporal difference learning blends Monte Carlo estimation with dynamic programming. Its errors echo dopamine signals observed in the brain.",
      ["Q-learning", "Monte Carlo method"]),
    t("Multi-armed bandit", ["reinforcement learning"],
      "is the simplest sequential decision problem, with one state and several actions of unknown payoff.",
      "It strips reinforcement learning down to pure exploration versus exploitation.",
      "Website experiments are textbook multi-armed bandit problems. Upper-confidence and Thompson strategies solve bandits near-optimally.",
      ["Exploration-exploitation tradeoff", "Reinforcement learning"]),
    t("Exploration-exploitation tradeoff", ["reinforcement learning"],
      "is the dilemma between acting on current knowledge and acting to gain more knowledge.",
      "It cannot be escaped, only balanced, by any agent learning while acting.",
      "Epsilon-greedy buys exploration with a coin flip. Tutoring systems face an exploration-exploitation tradeoff when choosing which hint policy to trust.",
      ["Multi-armed bandit", "Reinforcement learning"]),

    # ---- distance and geometry ----------------------------------------------
    t("Euclidean distance", ["geometry"],
      "is the straight-line distance between two points in space.",
      "It is the square root of the summed squared coordinate differences.",
      "Euclidean distance underlies k-means and nearest-neighbor methods. Unequal feature scales silently distort Euclidean distance.",
      ["Manhattan distance", "Cosine similarity", "Feature scaling"]),
    t("Manhattan distance", ["geometry"],
      "is the distance measured along axis-aligned moves, like walking a street grid.",
      "It sums the absolute coordinate differences instead of squaring them.",
      "Manhattan distance is less dominated by any single coordinate than Euclidean distance. Sparse high-dimensional data often prefers manhattan distance.",
      ["Euclidean distance", "Mean absolute error"]),
    t("Jaccard index", ["geometry", "information retrieval"],
      "is the similarity of two sets measured as the size of their intersection over their union.",
      "It ignores everything absent from both sets, which suits sparse data.",
      "The Jaccard index compares documents as sets of words or shingles. Min-hashing estimates the Jaccard index at scale.",
      ["Cosine similarity", "Bag-of-words model"]),
    t("Kernel method", ["kernels"],
      "is a technique that replaces inner products with a kernel function, implicitly working in a richer feature space.",
      "It lets linear algorithms learn nonlinear patterns without ever materializing the expanded features.",
      "The support vector machine is the flagship kernel method. Kernel choice is where domain knowledge enters a kernel method.",
      ["Support vector machine", "Feature engineering"]),

    # ---- tutoring and learning science --------------------------------------
    t("Intelligent tutoring system", ["education"],
      "is software that emulates a human tutor by tracking a learner and adapting its instruction.",
      "It selects tasks, grades attempts, and delivers hints in a tight interactive loop.",
      "An intelligent tutoring system typically separates an outer loop over tasks from an inner loop within a task. Decades of classroom studies show intelligent tutoring systems approaching human tutoring effect sizes.",
      ["Zone of proximal development", "Knowledge tracing", "Learning gain"]),
    t("Zone of proximal development", ["education"],
      "is the band of task difficulty a learner can master with help but not yet alone.",
      "It is where instruction pays off most, between boredom below and frustration above.",
      "Tutors aim tasks and hints at the zone of proximal development. Adaptive systems estimate the zone of proximal development from recent performance.",
      ["Intelligent tutoring system", "Mastery learning"]),
    t("Knowledge tracing", ["education"],
      "is the modeling of a learner's evolving skill from their sequence of attempts.",
      "It predicts the chance the next attempt succeeds, skill by skill.",
      "Bayesian knowledge tracing treats each skill as a hidden state. Deep knowledge tracing replaces its hidden state with a recurrent network.",
      ["Hidden Markov model", "Intelligent tutoring system"]),
    t("Learning gain", ["education", "evaluation"],
      "is the improvement attributable to an instructional intervention.",
      "It is often measured as the share of interventions followed immediately by a correct attempt.",
      "Learning gain comparisons across conditions need confidence intervals and significance tests. Raw learning gain conflates item difficulty with learner progress unless conditions are balanced.",
      ["Intelligent tutoring system", "Confidence interval", "Hypothesis testing"]),
    t("Mastery learning", ["education"],
      "is instruction that holds achievement fixed and lets time vary, advancing learners only on demonstrated mastery.",
      "It replaces the fixed-pace classroom compromise with a per-learner schedule.",
      "Tutoring systems implement mastery learning with per-skill thresholds. Mastery learning's classic result is a large average improvement over conventional pacing.",
      ["Intelligent tutoring system", "Knowledge tracing"]),
    t("Spaced repetition", ["education"],
      "is scheduling reviews at growing intervals timed just before forgetting.",
      "It exploits the spacing effect, by which distributed practice beats massed practice.",
      "Flashcard systems implement spaced repetition with expanding review queues. Spaced repetition multiplies retention per minute of study.",
      ["Mastery learning", "Knowledge tracing"]),
    t("Formative assessment", ["education"],
      "is assessment used during learning to steer instruction rather than to grade it.",
      "It turns student errors into immediate, actionable feedback.",
      "Hints and worked examples after a wrong attempt are formative assessment in action. Timeliness is what gives formative assessment its power.",
      ["Intelligent tutoring system", "Learning gain"]),
]

SYNONYMS = {
    "ols": ["Linear regression"],
    "least squares": ["Linear regression"],
    "logit model": ["Logistic regression"],
    "sgd": ["Stochastic gradient descent"],
    "pca": ["Principal component analysis"],
    "svd": ["Singular value decomposition"],
    "svm": ["Support vector machine"],
    "cnn": ["Convolutional neural network"],
    "convnet": ["Convolutional neural network"],
    "rnn": ["Recurrent neural network"],
    "lstm": ["Long short-term memory"],
    "gan": ["Generative adversarial network"],
    "vae": ["Variational autoencoder"],
    "knn": ["K-nearest neighbors"],
    "nearest neighbors": ["K-nearest neighbors"],
    "mlp": ["Multilayer perceptron"],
    "lda": ["Latent Dirichlet allocation", "Linear discriminant analysis"],
    "rl": ["Reinforcement learning"],
    "nlp": ["Natural language processing"],
    "mle": ["Maximum likelihood estimation"],
    "em": ["Expectation maximization"],
    "em algorithm": ["Expectation maximization"],
    "relu": ["Rectified linear unit"],
    "hmm": ["Hidden Markov model"],
    "mdp": ["Markov decision process"],
    "mse": ["Mean squared error"],
    "mae": ["Mean absolute error"],
    "auc": ["ROC curve"],
    "cross entropy": ["Log loss"],
    "smote": ["Synthetic minority oversampling"],
    "oversampling": ["Synthetic minority oversampling"],
    "cv": ["Cross-validation"],
    "k-fold": ["Cross-validation"],
    "gbm": ["Gradient boosting"],
    "xgboost": ["Gradient boosting"],
    "bandit": ["Multi-armed bandit"],
    "tf-idf": ["Tf-idf weighting"],
    "tfidf": ["Tf-idf weighting"],
    "bag of words": ["Bag-of-words model"],
    "its": ["Intelligent tutoring system"],
    "tutoring system": ["Intelligent tutoring system"],
    "zpd": ["Zone of proximal development"],
    "bias": ["Statistical bias", "Bias-variance tradeoff"],
    "high bias": ["Statistical bias", "Bias-variance tradeoff"],
    "word vectors": ["Word embedding"],
    "missing data": ["Imputation"],
}


def article_record(topic: dict) -> dict:
    text = (
        f"{topic['title']} {topic['definition']} {topic['pronoun']}"
        f"\n\n{topic['practice']}"
    )
    return {
        "title": topic["title"],
        "text": text,
        "links": topic["links"],
        "tags": topic["tags"],
    }


def main() -> None:
    DATA_DIR.mkdir(parents=True, exist_ok=True)
    titles = [topic["title"] for topic in TOPICS]
    duplicates = {x for x in titles if titles.count(x) > 1}
    if duplicates:
        raise SystemExit(f"duplicate topic titles: {sorted(duplicates)}")

    corpus_path = DATA_DIR / "wiki_corpus.jsonl"
    with open(corpus_path, "w", encoding="utf-8") as fh:
        for topic in TOPICS:
            fh.write(json.dumps(article_record(topic), ensure_ascii=False))
            fh.write("\n")

    synonyms_path = DATA_DIR / "synonyms.json"
    synonyms_path.write_text(
        json.dumps(SYNONYMS, indent=2, sort_keys=True, ensure_ascii=False) + "\n",
        encoding="utf-8",
    )

    known = set(titles)
    dangling = sorted(
        {link for topic in TOPICS for link in topic["links"] if link not in known}
    )
    print(f"wrote {len(TOPICS)} articles to {corpus_path}")
    print(f"wrote {len(SYNONYMS)} synonym entries to {synonyms_path}")
    if dangling:
        print(f"note: {len(dangling)} links point outside the corpus: {dangling}")


if __name__ == "__main__":
    main()
